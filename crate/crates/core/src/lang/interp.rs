//! Sequential interpreter.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::constructions::Bounds;
use crate::error::{Error, Result};
use crate::value::Value;

use super::ast::{Arg, Program, Stmt, StmtKind};
use super::ops::{apply, constant};

pub type Env = BTreeMap<String, Value>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_steps: usize,
    pub bounds: Bounds,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_steps: 100_000, bounds: Bounds::default() }
    }
}

fn located(e: Error, s: &Stmt) -> Error {
    let at = format!("line {} `{}`", s.line, s);
    match e {
        Error::SizeBound { what, bound } => Error::SizeBound { what: format!("{what} at {at}"), bound },
        Error::Type(m) => Error::Type(format!("{m} at {at}")),
        Error::NoUniversal(m) => Error::NoUniversal(format!("{m} at {at}")),
        Error::Runtime(m) => Error::Runtime(format!("{m} at {at}")),
        e => e,
    }
}

/// Runs `p` and returns the value of the variable named by `Return`.
pub fn run(p: &Program, env: &Env, limits: Limits) -> Result<Value> {
    run_with_env(p, env, limits).map(|(v, _)| v)
}

/// Like [`run`], also returning the final environment.
pub fn run_with_env(p: &Program, env: &Env, limits: Limits) -> Result<(Value, Env)> {
    let mut env = env.clone();
    for (name, kind) in &p.inputs {
        match env.get(name) {
            None => return Err(Error::Runtime(format!("missing input '{name}'"))),
            Some(v) if v.kind() != *kind => {
                return Err(Error::ty(format!("input '{name}' should be a {kind}, got a {}", v.kind())))
            }
            Some(_) => {}
        }
    }
    let lookup = |env: &Env, v: &str, s: &Stmt| -> Result<Value> {
        env.get(v)
            .cloned()
            .ok_or_else(|| located(Error::Runtime(format!("variable '{v}' has no value")), s))
    };
    let mut pc = 0usize;
    let mut steps = 0usize;
    while pc < p.statements.len() {
        steps += 1;
        if steps > limits.max_steps {
            return Err(Error::StepLimit(limits.max_steps));
        }
        let s = &p.statements[pc];
        pc += 1;
        match &s.kind {
            StmtKind::Assign { lhs, op, args } => {
                let vals = args
                    .iter()
                    .map(|a| match a {
                        Arg::Var(v) => lookup(&env, v, s),
                        Arg::Const(c) => Ok(constant(*c)),
                    })
                    .collect::<Result<Vec<_>>>()?;
                let out = apply(*op, &vals, limits.bounds).map_err(|e| located(e, s))?;
                if lhs.len() > out.len() {
                    return Err(located(
                        Error::ty(format!("{op} yields {} values, {} names given", out.len(), lhs.len())),
                        s,
                    ));
                }
                for (name, v) in lhs.iter().zip(out) {
                    env.insert(name.clone(), v);
                }
            }
            StmtKind::If { lhs, rhs, target } => {
                let a = lookup(&env, lhs, s)?.promote().map_err(|e| located(e, s))?;
                let b = lookup(&env, rhs, s)?.promote().map_err(|e| located(e, s))?;
                if a == b {
                    pc = p.label_index(target).expect("labels checked by the parser");
                }
            }
            StmtKind::Goto(target) => {
                pc = p.label_index(target).expect("labels checked by the parser");
            }
            StmtKind::Return(v) => {
                let out = lookup(&env, v, s)?;
                return Ok((out, env));
            }
        }
    }
    Err(Error::Runtime("program ended without reaching Return".into()))
}
