use std::fmt;

use crate::value::Kind;

/// Operation names of the language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Zero,
    One,
    Two,
    IsoTwo,
    S,
    T,
    Bang,
    Ident,
    Source,
    Target,
    Op,
    Pick,
    Determine,
    Hcomp,
    Vcomp,
    Pow,
    KanExL,
    KanExR,
    KanInd,
    KanLif,
    Coprod,
    Coeq,
    Pullback,
    Composable,
}

pub const ALL_OPS: [Op; 24] = [
    Op::Zero,
    Op::One,
    Op::Two,
    Op::IsoTwo,
    Op::S,
    Op::T,
    Op::Bang,
    Op::Ident,
    Op::Source,
    Op::Target,
    Op::Op,
    Op::Pick,
    Op::Determine,
    Op::Hcomp,
    Op::Vcomp,
    Op::Pow,
    Op::KanExL,
    Op::KanExR,
    Op::KanInd,
    Op::KanLif,
    Op::Coprod,
    Op::Coeq,
    Op::Pullback,
    Op::Composable,
];

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::Zero => "Zero",
            Op::One => "One",
            Op::Two => "Two",
            Op::IsoTwo => "IsoTwo",
            Op::S => "S",
            Op::T => "T",
            Op::Bang => "Bang",
            Op::Ident => "Ident",
            Op::Source => "Source",
            Op::Target => "Target",
            Op::Op => "Op",
            Op::Pick => "Pick",
            Op::Determine => "Determine",
            Op::Hcomp => "Hcomp",
            Op::Vcomp => "Vcomp",
            Op::Pow => "Pow",
            Op::KanExL => "KanExL",
            Op::KanExR => "KanExR",
            Op::KanInd => "KanInd",
            Op::KanLif => "KanLif",
            Op::Coprod => "Coprod",
            Op::Coeq => "Coeq",
            Op::Pullback => "Pullback",
            Op::Composable => "Composable",
        }
    }

    pub fn from_name(s: &str) -> Option<Op> {
        ALL_OPS.iter().copied().find(|o| o.name() == s)
    }

    /// Accepted argument counts.
    pub fn arities(self) -> &'static [usize] {
        match self {
            Op::Zero | Op::One | Op::Two | Op::IsoTwo => &[0],
            Op::S | Op::T => &[0, 1],
            Op::Ident | Op::Source | Op::Target | Op::Op | Op::Pick | Op::Composable => &[1],
            Op::Determine => &[1, 2],
            Op::KanInd => &[4],
            _ => &[2],
        }
    }

    /// Constants that may appear inline as arguments.
    pub fn is_constant(self) -> bool {
        matches!(self, Op::Zero | Op::One | Op::Two | Op::IsoTwo | Op::S | Op::T)
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Arg {
    Var(String),
    Const(Op),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Var(v) => f.write_str(v),
            Arg::Const(c) => f.write_str(c.name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Assign { lhs: Vec<String>, op: Op, args: Vec<Arg> },
    If { lhs: String, rhs: String, target: String },
    Goto(String),
    Return(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stmt {
    pub label: Option<String>,
    pub kind: StmtKind,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Program {
    pub inputs: Vec<(String, Kind)>,
    pub statements: Vec<Stmt>,
}

impl Program {
    /// Number of statements other than `Return`. Input declarations and
    /// inline constant arguments are free.
    pub fn length(&self) -> usize {
        self.statements.iter().filter(|s| !matches!(s.kind, StmtKind::Return(_))).count()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.statements.iter().position(|s| s.label.as_deref() == Some(label))
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = &self.label {
            write!(f, "{l}: ")?;
        }
        match &self.kind {
            StmtKind::Assign { lhs, op, args } => {
                write!(f, "{} = {op}", lhs.join(", "))?;
                if !args.is_empty() {
                    let a: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                    write!(f, "({})", a.join(", "))?;
                }
                Ok(())
            }
            StmtKind::If { lhs, rhs, target } => write!(f, "If {lhs} == {rhs} Goto {target}"),
            StmtKind::Goto(t) => write!(f, "Goto {t}"),
            StmtKind::Return(v) => write!(f, "Return {v}"),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, k) in &self.inputs {
            writeln!(f, "Input {v} : {k}")?;
        }
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
