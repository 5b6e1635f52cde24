//! Finite categories, the Sammy description language and an exact
//! shortest-program search over it.

pub mod catalog;
pub mod complexity;
pub mod constructions;
pub(crate) mod enumerate;
pub mod error;
pub mod fincat;
pub mod functor;
pub mod iso;
pub mod json;
pub mod lang;
pub mod random;
pub mod value;

pub use error::{Error, Result};
pub use fincat::{Constant, FinCat, MorId, ObjId, Violation};
pub use functor::{ConstFunctor, Functor, NatTrans, Picked};
pub use value::Value;
