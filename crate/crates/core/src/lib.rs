//! Exact computational commutative algebra for Betti tables of projective
//! varieties: Gröbner bases, Schreyer resolutions, variety constructors and
//! the quadratic-strand bound checks.

pub mod error;
pub mod golden;
pub mod groebner;
pub mod hierarchy;
pub mod io;
pub mod polycore;
pub mod resolution;
pub mod varieties;

pub use error::{AlgebraError, Result};
