//! Gröbner bases by Buchberger's algorithm, elimination, kernels of ring maps
//! and partial elimination ideals.

mod buchberger;
mod elimination;

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{AlgebraError, Result};
use crate::polycore::{Field, Monomial, MonomialOrder, Polynomial, Ring};

pub use buchberger::{groebner_basis, normal_form_by, s_polynomial, Reducer};
pub use elimination::{
    eliminate, eliminate_truncated, intersect, kernel_of_ring_map, partial_elimination_ideals,
    KernelOptions, PartialEliminationFamily,
};

/// A homogeneous ideal given by generators, with its reduced Gröbner basis
/// (under the ring's order) computed on first use.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    ring: Ring<F>,
    generators: Vec<Polynomial<F>>,
    basis: OnceLock<Vec<Polynomial<F>>>,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped. Every generator must be homogeneous for
    /// the ring's grading.
    pub fn new(ring: Ring<F>, generators: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &generators {
            ring.check_owns(g)?;
            if !ring.is_homogeneous(g) {
                return Err(AlgebraError::Inhomogeneous(ring.format(g)));
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring, generators, basis: OnceLock::new() })
    }

    pub fn zero(ring: Ring<F>) -> Self {
        Ideal { ring, generators: Vec::new(), basis: OnceLock::new() }
    }

    /// Parses one generator per string.
    pub fn parse(ring: Ring<F>, generators: &[&str]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| crate::polycore::parse_polynomial(s, &ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    /// Ideal whose generators are already known to be a reduced Gröbner basis.
    pub(crate) fn from_basis(ring: Ring<F>, basis: Vec<Polynomial<F>>) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(basis.clone());
        Ideal { ring, generators: basis, basis: cell }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn num_vars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Reduced monic Gröbner basis under the ring's order.
    pub fn groebner(&self) -> &[Polynomial<F>] {
        self.basis.get_or_init(|| groebner_basis(&self.ring, &self.generators, None))
    }

    pub fn has_basis(&self) -> bool {
        self.basis.get().is_some()
    }

    /// Gröbner basis valid in degrees up to `bound`. Not cached.
    pub fn truncated_groebner(&self, bound: u32) -> Vec<Polynomial<F>> {
        if let Some(b) = self.basis.get() {
            return b.clone();
        }
        groebner_basis(&self.ring, &self.generators, Some(bound))
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().iter().any(|g| g.lm().is_one())
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        normal_form_by(&self.ring, f, self.groebner()).is_zero()
    }

    /// Degrees of the generators, ascending.
    pub fn generator_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> =
            self.generators.iter().filter_map(|g| self.ring.degree(g)).collect();
        d.sort_unstable();
        d
    }

    /// The same ideal viewed in `ring` (same variables, possibly another order).
    pub fn with_ring(&self, ring: Ring<F>) -> Self {
        assert_eq!(ring.nvars(), self.ring.nvars());
        let gens = self.generators.iter().map(|g| ring.convert(g)).collect();
        Ideal { ring, generators: gens, basis: OnceLock::new() }
    }

    /// Generators of degree at most `d`.
    pub fn truncate_generators(&self, d: u32) -> Self {
        let gens = self
            .generators
            .iter()
            .filter(|g| self.ring.degree(g).is_some_and(|e| e <= d))
            .cloned()
            .collect();
        Ideal { ring: self.ring.clone(), generators: gens, basis: OnceLock::new() }
    }

    /// Replaces the generators by a minimal generating set drawn from the
    /// reduced Gröbner basis.
    pub fn minimal_generators(&self) -> Self {
        let ring = &self.ring;
        let basis = self.groebner();
        let mut sorted: Vec<&Polynomial<F>> = basis.iter().collect();
        sorted.sort_by(|a, b| ring.degree(a).cmp(&ring.degree(b)).then_with(|| ring.cmp(&a.lm(), &b.lm())));
        let mut kept: Vec<Polynomial<F>> = Vec::new();
        let mut start = 0;
        while start < sorted.len() {
            let d = ring.degree(sorted[start]);
            let end = start + sorted[start..].iter().take_while(|g| ring.degree(g) == d).count();
            let lower = Reducer::new(ring, &groebner_basis(ring, &kept, d));
            // normal forms in echelon form, indexed by leading monomial
            let mut echelon: HashMap<Monomial, Polynomial<F>> = HashMap::new();
            for g in &sorted[start..end] {
                let mut h = lower.reduce(g);
                while let Some((c, e)) =
                    h.terms().iter().find_map(|t| echelon.get(&t.mon).map(|e| (t.coeff.clone(), e)))
                {
                    h = ring.add_scaled(&h, &ring.field().neg(&c), &Monomial::one(), e);
                }
                if !h.is_zero() {
                    let h = ring.monic(&h);
                    echelon.insert(h.lm(), h);
                    kept.push((*g).clone());
                }
            }
            start = end;
        }
        Ideal::from_basis(ring.clone(), basis.to_vec()).with_generators(kept)
    }

    fn with_generators(self, generators: Vec<Polynomial<F>>) -> Self {
        Ideal { generators, ..self }
    }
}

/// Reduced Gröbner basis of `ideal` under `order`, cached on the returned
/// ideal (whose ring carries `order`).
pub fn buchberger<F: Field>(ideal: &Ideal<F>, order: MonomialOrder) -> Ideal<F> {
    let ring = ideal.ring.reordered(order);
    let out = ideal.with_ring(ring);
    out.groebner();
    out
}

/// Remainder of `f` modulo the Gröbner basis of `ideal` (computed if absent).
pub fn normal_form<F: Field>(f: &Polynomial<F>, ideal: &Ideal<F>) -> Result<Polynomial<F>> {
    ideal.ring.check_owns(f)?;
    Ok(normal_form_by(&ideal.ring, f, ideal.groebner()))
}
