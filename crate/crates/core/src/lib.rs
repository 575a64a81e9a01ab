//! Galois groups of rational polynomials by resolvent descent over p-adic
//! root approximations, and the field constructions built on top of them.

pub mod arith;
pub mod constructions;
pub mod engine;
pub mod error;
pub mod invariants;
pub mod local;
pub mod perm;
pub mod towers;

pub use arith::{IntPoly, Rat, RatPoly};
pub use error::{Error, Result};
