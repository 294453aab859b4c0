//! Graded free resolutions by iterated Schreyer syzygies, minimalization,
//! Betti tables, Hilbert series and the numeric invariants derived from them.

mod betti;
mod complex;
mod hilbert;
mod module;
mod schreyer;
mod syzygy;

use log::debug;

use crate::error::{AlgebraError, Result};
use crate::groebner::Ideal;
use crate::polycore::Field;

pub use betti::{betti_from_ranks, betti_table, BettiTable};
pub use complex::{minimalize, FreeResolution, GradedFreeModule, GradedMatrix};
pub use hilbert::{divide_out_one_minus_t, hilbert_series, monomial_numerator, HilbertSeries};
pub use schreyer::schreyer_resolution;
pub use syzygy::module_syzygies;

/// Minimal graded free resolution of `S/I`.
pub fn free_resolution<F: Field>(ideal: &Ideal<F>) -> Result<FreeResolution<F>> {
    let ring = ideal.ring();
    let basis = ideal.groebner();
    let frame = schreyer_resolution(ring, basis, None)?;
    debug!("schreyer frame ranks {:?}", frame.ranks());
    let res = if frame.minimal { frame } else { minimalize(&frame) };
    debug!("minimal ranks {:?}", res.ranks());
    if res.length() > ring.nvars() {
        return Err(AlgebraError::Degenerate(format!(
            "projective dimension {} exceeds the number of variables",
            res.length()
        )));
    }
    Ok(res)
}

/// Betti table of `S/I` through the minimal resolution.
pub fn betti_numbers<F: Field>(ideal: &Ideal<F>) -> Result<BettiTable> {
    betti_table(&free_resolution(ideal)?)
}

/// Betti numbers `β_{i,j}` with `i + j <= bound`, from a Gröbner basis and
/// a Schreyer frame both truncated at degree `bound`.
pub fn truncated_betti_numbers<F: Field>(ideal: &Ideal<F>, bound: u32) -> Result<BettiTable> {
    let ring = ideal.ring();
    let basis = ideal.truncated_groebner(bound);
    let frame = schreyer_resolution(ring, &basis, Some(bound as i32))?;
    let res = if frame.minimal { frame } else { minimalize(&frame) };
    let full = betti_table(&res)?;
    Ok(BettiTable::from_entries(full.entries().filter(|&((i, j), _)| i + j <= bound as usize).map(|((i, j), b)| (i, j, b))))
}

/// Largest `p` for which property `N_{2,p}` holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum N2p {
    /// No entry `β_{i,j}` with `i ≥ 1` and `j ≥ 2`.
    All,
    UpTo(usize),
}

impl std::fmt::Display for N2p {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            N2p::All => write!(f, "all"),
            N2p::UpTo(p) => write!(f, "{p}"),
        }
    }
}

impl N2p {
    pub fn of(table: &BettiTable) -> N2p {
        match table.entries().filter(|((i, j), _)| *i >= 1 && *j >= 2).map(|((i, _), _)| i).min() {
            None => N2p::All,
            Some(i) => N2p::UpTo(i - 1),
        }
    }

    pub fn holds(&self, p: usize) -> bool {
        match self {
            N2p::All => true,
            N2p::UpTo(q) => p <= *q,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericInvariants {
    pub hilbert_numerator: Vec<i64>,
    pub h_vector: Vec<i64>,
    /// Projective dimension of the variety.
    pub dimension: usize,
    pub degree: u64,
    pub codimension: usize,
    pub regularity: usize,
    pub projective_dimension: usize,
    pub is_acm: bool,
    pub n2p: N2p,
}

/// Invariants of `X = V(I)` from its Hilbert series and Betti table.
pub fn numeric_invariants<F: Field>(ideal: &Ideal<F>, table: &BettiTable) -> Result<NumericInvariants> {
    if ideal.is_zero() {
        return Err(AlgebraError::ZeroIdeal);
    }
    let hs = hilbert_series(ideal)?;
    let krull = hs
        .krull_dimension()
        .ok_or_else(|| AlgebraError::Degenerate("the unit ideal defines the empty set".into()))?;
    if krull == 0 {
        return Err(AlgebraError::Degenerate("the ideal is irrelevant".into()));
    }
    let dimension = krull - 1;
    let r = ideal.num_vars() - 1;
    let codimension = r - dimension;
    let projective_dimension = table.projective_dimension();
    Ok(NumericInvariants {
        degree: hs.degree() as u64,
        hilbert_numerator: hs.numerator,
        h_vector: hs.h_vector,
        dimension,
        codimension,
        regularity: table.regularity(),
        projective_dimension,
        is_acm: projective_dimension == codimension,
        n2p: N2p::of(table),
    })
}

/// Whether `Σ (-1)^i β_{i,j} t^{i+j}` equals the Hilbert numerator.
pub fn euler_identity_holds<F: Field>(ideal: &Ideal<F>, table: &BettiTable) -> Result<bool> {
    let hs = hilbert_series(ideal)?;
    Ok(table.euler_numerator() == hs.numerator)
}

#[cfg(test)]
mod tests;
