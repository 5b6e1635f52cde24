//! Line-oriented parser.
//!
//! ```text
//! [LABEL ':'] VAR {',' VAR} '=' OPNAME ['(' ARG {',' ARG} ')']
//! [LABEL ':'] If VAR '==' VAR Goto LABEL
//! [LABEL ':'] Goto LABEL
//! [LABEL ':'] Return VAR
//! Input VAR ':' KIND
//! ```
//! `#` starts a comment.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::value::Kind;

use super::ast::{Arg, Op, Program, Stmt, StmtKind};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Eq,
    EqEq,
    Colon,
    Comma,
    LParen,
    RParen,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn lex(text: &str, line: usize) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            '=' if chars.get(i + 1) == Some(&'=') => {
                out.push((Tok::EqEq, col));
                i += 2;
            }
            '=' => {
                out.push((Tok::Eq, col));
                i += 1;
            }
            ':' => {
                out.push((Tok::Colon, col));
                i += 1;
            }
            ',' => {
                out.push((Tok::Comma, col));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1;
            }
            c if c.is_alphanumeric() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push((Tok::Word(chars[start..i].iter().collect()), col));
            }
            other => return Err(err(line, col, format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

const KEYWORDS: [&str; 4] = ["If", "Goto", "Return", "Input"];

struct Line {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Line {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let col = self.col();
        match self.next() {
            Some(t) if t == want => Ok(()),
            _ => Err(err(self.line, col, format!("expected {what}"))),
        }
    }

    fn name(&mut self, what: &str) -> Result<String> {
        let col = self.col();
        match self.next() {
            Some(Tok::Word(w)) if !KEYWORDS.contains(&w.as_str()) => {
                if w == "Cat" {
                    return Err(err(
                        self.line,
                        col,
                        "the constant Cat (the category of all small categories) cannot be represented",
                    ));
                }
                if !w.starts_with(|c: char| c.is_alphabetic() || c == '_') {
                    return Err(err(self.line, col, format!("invalid {what} '{w}'")));
                }
                Ok(w)
            }
            _ => Err(err(self.line, col, format!("expected {what}"))),
        }
    }

    fn done(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            Err(err(self.line, self.col(), "unexpected trailing input"))
        } else {
            Ok(())
        }
    }
}

pub fn parse(text: &str) -> Result<Program> {
    let mut prog = Program::default();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let toks = lex(raw, line_no)?;
        if toks.is_empty() {
            continue;
        }
        let mut l = Line { toks, pos: 0, line: line_no, end_col: raw.chars().count() + 1 };
        if l.peek() == Some(&Tok::Word("Input".into())) {
            l.next();
            let v = l.name("input variable")?;
            l.expect(Tok::Colon, "':' after the input name")?;
            let col = l.col();
            let k = match l.next() {
                Some(Tok::Word(w)) => Kind::parse(&w).ok_or_else(|| err(line_no, col, format!("unknown kind '{w}'")))?,
                _ => return Err(err(line_no, col, "expected a kind")),
            };
            l.done()?;
            if prog.inputs.iter().any(|(n, _)| *n == v) {
                return Err(err(line_no, 1, format!("input '{v}' declared twice")));
            }
            prog.inputs.push((v, k));
            continue;
        }
        let mut label = None;
        if matches!(l.toks.get(1), Some((Tok::Colon, _))) {
            label = Some(l.name("label")?);
            l.next();
        }
        let kind = statement(&mut l)?;
        l.done()?;
        prog.statements.push(Stmt { label, kind, line: line_no });
    }
    check(&prog)?;
    Ok(prog)
}

fn statement(l: &mut Line) -> Result<StmtKind> {
    let line = l.line;
    match l.peek() {
        Some(Tok::Word(w)) if w == "If" => {
            l.next();
            let lhs = l.name("variable")?;
            l.expect(Tok::EqEq, "'=='")?;
            let rhs = l.name("variable")?;
            let col = l.col();
            if l.next() != Some(Tok::Word("Goto".into())) {
                return Err(err(line, col, "expected Goto"));
            }
            let target = l.name("label")?;
            Ok(StmtKind::If { lhs, rhs, target })
        }
        Some(Tok::Word(w)) if w == "Goto" => {
            l.next();
            Ok(StmtKind::Goto(l.name("label")?))
        }
        Some(Tok::Word(w)) if w == "Return" => {
            l.next();
            Ok(StmtKind::Return(l.name("variable")?))
        }
        _ => {
            let mut lhs = vec![l.name("variable")?];
            while l.peek() == Some(&Tok::Comma) {
                l.next();
                lhs.push(l.name("variable")?);
            }
            l.expect(Tok::Eq, "'='")?;
            let col = l.col();
            let name = l.name("operation")?;
            let op = Op::from_name(&name).ok_or_else(|| err(line, col, format!("unknown operation '{name}'")))?;
            let mut args = Vec::new();
            if l.peek() == Some(&Tok::LParen) {
                l.next();
                if l.peek() != Some(&Tok::RParen) {
                    loop {
                        let a = l.name("argument")?;
                        args.push(match Op::from_name(&a) {
                            Some(c) if c.is_constant() => Arg::Const(c),
                            Some(_) => {
                                return Err(err(line, l.col(), format!("operation '{a}' cannot be an argument")))
                            }
                            None => Arg::Var(a),
                        });
                        if l.peek() == Some(&Tok::Comma) {
                            l.next();
                        } else {
                            break;
                        }
                    }
                }
                l.expect(Tok::RParen, "')'")?;
            }
            if !op.arities().contains(&args.len()) {
                return Err(err(
                    line,
                    col,
                    format!("{op} takes {:?} arguments, got {}", op.arities(), args.len()),
                ));
            }
            for v in &lhs {
                if Op::from_name(v).is_some() {
                    return Err(err(line, 1, format!("'{v}' is an operation name")));
                }
            }
            Ok(StmtKind::Assign { lhs, op, args })
        }
    }
}

fn check(p: &Program) -> Result<()> {
    let mut labels = HashSet::new();
    for s in &p.statements {
        if let Some(l) = &s.label {
            if !labels.insert(l.clone()) {
                return Err(err(s.line, 1, format!("duplicate label '{l}'")));
            }
        }
    }
    let mut defined: HashSet<&str> = p.inputs.iter().map(|(v, _)| v.as_str()).collect();
    for s in &p.statements {
        if let StmtKind::Assign { lhs, .. } = &s.kind {
            defined.extend(lhs.iter().map(|v| v.as_str()));
        }
    }
    let known = |v: &str, line: usize| -> Result<()> {
        if defined.contains(v) {
            Ok(())
        } else {
            Err(err(line, 1, format!("unknown variable '{v}'")))
        }
    };
    for s in &p.statements {
        match &s.kind {
            StmtKind::Assign { args, .. } => {
                for a in args {
                    if let Arg::Var(v) = a {
                        known(v, s.line)?;
                    }
                }
            }
            StmtKind::If { lhs, rhs, target } => {
                known(lhs, s.line)?;
                known(rhs, s.line)?;
                if !labels.contains(target) {
                    return Err(err(s.line, 1, format!("unknown label '{target}'")));
                }
            }
            StmtKind::Goto(t) => {
                if !labels.contains(t) {
                    return Err(err(s.line, 1, format!("unknown label '{t}'")));
                }
            }
            StmtKind::Return(v) => known(v, s.line)?,
        }
    }
    Ok(())
}
