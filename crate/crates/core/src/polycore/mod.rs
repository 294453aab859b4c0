//! Exact coefficient fields, multivariate polynomials, monomial orders and
//! sparse linear algebra.

pub mod field;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod poly;

pub use field::{Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};
pub use matrix::{Echelon, ExactMatrix};
pub use monomial::{Monomial, MonomialOrder, SortKey, MAX_VARS};
pub use parse::parse_polynomial;
pub use poly::{poly_arith, ArithOp, Polynomial, Ring, Term};

#[cfg(test)]
mod tests;
