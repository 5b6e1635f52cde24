use thiserror::Error;

use crate::complexity::ComplexityReport;
use crate::fincat::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A construction grew past its configured bound. For coequalizers this
    /// usually means the quotient is infinite.
    #[error("size bound exceeded: {what} (bound {bound})")]
    SizeBound { what: String, bound: usize },

    #[error("no universal construction: {0}")]
    NoUniversal(String),

    #[error("type error: {0}")]
    Type(String),

    #[error("step limit of {0} reached (possible infinite loop)")]
    StepLimit(usize),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("invalid structure: {}", summarize(.0))]
    Invalid(Vec<Violation>),

    #[error("{0}")]
    Runtime(String),

    #[error("search budget exhausted")]
    BudgetExhausted(Box<ComplexityReport>),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

fn summarize(v: &[Violation]) -> String {
    match v.first() {
        Some(first) if v.len() == 1 => first.to_string(),
        Some(first) => format!("{first} (and {} more)", v.len() - 1),
        None => "no violations".to_string(),
    }
}

impl Error {
    /// Short stable name used on diagnostic streams.
    pub fn class(&self) -> &'static str {
        match self {
            Error::SizeBound { .. } => "SizeBound",
            Error::NoUniversal(_) => "NoUniversal",
            Error::Type(_) => "TypeError",
            Error::StepLimit(_) => "StepLimit",
            Error::Parse { .. } => "ParseError",
            Error::Invalid(_) => "Invalid",
            Error::Runtime(_) => "RuntimeError",
            Error::BudgetExhausted(_) => "BudgetExhausted",
            Error::Internal(_) => "Internal",
            Error::Json(_) => "ParseError",
            Error::Io(_) => "IoError",
        }
    }

    pub(crate) fn size(what: impl Into<String>, bound: usize) -> Self {
        Error::SizeBound { what: what.into(), bound }
    }

    pub(crate) fn ty(msg: impl Into<String>) -> Self {
        Error::Type(msg.into())
    }
}
