//! Python bindings. Values cross the boundary as JSON documents.
#![allow(clippy::useless_conversion)]

use std::collections::HashMap;
use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use sammy::complexity::{k_search, Budget, Mode, SearchConfig};
use sammy::lang::{parse, stdlib, Env, Limits};
use sammy::{constructions, iso, json, FinCat, Value};

create_exception!(sammy, SammyError, PyException);

fn err(e: sammy::Error) -> PyErr {
    SammyError::new_err(format!("{}: {e}", e.class()))
}

fn category(doc: &str) -> PyResult<Arc<FinCat>> {
    let v = json::value_from_str(doc).map_err(err)?;
    Ok(v.as_category().map_err(err)?.clone())
}

fn env(inputs: Option<HashMap<String, String>>) -> PyResult<Env> {
    let mut env = Env::new();
    for (name, doc) in inputs.unwrap_or_default() {
        env.insert(name, json::value_from_str(&doc).map_err(err)?);
    }
    Ok(env)
}

/// Law violations of a category table, one string each.
#[pyfunction]
fn check(doc: &str) -> PyResult<Vec<String>> {
    let table = json::table_from_str(doc).map_err(err)?;
    Ok(table.validate().iter().map(|v| v.to_string()).collect())
}

#[pyfunction]
fn isomorphic(a: &str, b: &str) -> PyResult<bool> {
    Ok(iso::isomorphic(&category(a)?, &category(b)?).is_some())
}

#[pyfunction]
fn equivalent(a: &str, b: &str) -> PyResult<bool> {
    Ok(iso::equivalent(&category(a)?, &category(b)?))
}

#[pyfunction]
fn skeleton(doc: &str) -> PyResult<String> {
    Ok(json::category_to_string(&constructions::skeleton(&category(doc)?).category))
}

#[pyfunction]
fn entropy(doc: &str) -> PyResult<f64> {
    Ok(iso::entropy(&*category(doc)?))
}

/// Source text of a shipped macro.
#[pyfunction]
fn macro_text(name: &str) -> PyResult<String> {
    stdlib::macro_program(name)
        .map(|p| p.to_string())
        .ok_or_else(|| SammyError::new_err(format!("no macro named '{name}'")))
}

/// Runs a program on named JSON inputs and returns the result as JSON.
#[pyfunction]
#[pyo3(signature = (program, inputs=None, max_steps=None))]
fn run(py: Python<'_>, program: &str, inputs: Option<HashMap<String, String>>, max_steps: Option<usize>) -> PyResult<String> {
    let p = parse(program).map_err(err)?;
    let env = env(inputs)?;
    let mut limits = Limits::default();
    if let Some(n) = max_steps {
        limits.max_steps = n;
    }
    let v = py.allow_threads(|| sammy::lang::run(&p, &env, limits)).map_err(err)?;
    Ok(json::value_to_string(&v))
}

/// Shortest-program search. Returns the report as JSON; a search that runs
/// out of budget raises with the partial report in the message.
#[pyfunction]
#[pyo3(signature = (target, given=None, max_len=None, mode="iso"))]
fn search(
    py: Python<'_>,
    target: &str,
    given: Option<HashMap<String, String>>,
    max_len: Option<usize>,
    mode: &str,
) -> PyResult<String> {
    let t: Value = json::value_from_str(target).map_err(err)?;
    let mut g: Vec<(String, Value)> = env(given)?.into_iter().collect();
    g.sort_by(|a, b| a.0.cmp(&b.0));
    let mode = match mode {
        "iso" => Mode::Iso,
        "eq" => Mode::Eq,
        m => return Err(SammyError::new_err(format!("unknown mode '{m}'"))),
    };
    let mut budget = Budget::default();
    if let Some(n) = max_len {
        budget.max_len = n;
    }
    let cfg = SearchConfig { mode, budget, ..SearchConfig::default() };
    match py.allow_threads(|| k_search(&t, &g, &cfg)) {
        Ok(r) => Ok(serde_json::to_string(&r).expect("report serializes")),
        Err(sammy::Error::BudgetExhausted(r)) => Err(SammyError::new_err(format!(
            "BudgetExhausted: {}",
            serde_json::to_string(&*r).expect("report serializes")
        ))),
        Err(e) => Err(err(e)),
    }
}

#[pymodule]
fn _sammy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SammyError", m.py().get_type_bound::<SammyError>())?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(skeleton, m)?)?;
    m.add_function(wrap_pyfunction!(entropy, m)?)?;
    m.add_function(wrap_pyfunction!(macro_text, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    Ok(())
}
