//! The Sammy language: syntax, parser, interpreter and macro library.

pub mod ast;
pub mod interp;
pub mod ops;
pub mod parser;
pub mod stdlib;

pub use ast::{Arg, Op, Program, Stmt, StmtKind};
pub use interp::{run, run_with_env, Env, Limits};
pub use parser::parse;
