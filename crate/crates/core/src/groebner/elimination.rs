use super::buchberger::{groebner_basis, Reducer};
use super::Ideal;
use crate::error::{AlgebraError, Result};
use crate::polycore::{Field, Monomial, MonomialOrder, Polynomial, Ring, Term};

fn weights_of<F: Field>(ring: &Ring<F>) -> Vec<u32> {
    (0..ring.nvars()).map(|i| ring.weight(i)).collect()
}

/// Applies `f` to every monomial and re-sorts in `target`.
fn map_monomials<F: Field>(
    target: &Ring<F>,
    p: &Polynomial<F>,
    f: impl Fn(&Monomial) -> Monomial,
) -> Polynomial<F> {
    target.from_terms(p.terms().iter().map(|t| (t.coeff.clone(), f(&t.mon))))
}

fn tail_ring<F: Field>(ring: &Ring<F>, k: usize) -> Result<Ring<F>> {
    Ring::weighted(ring.field().clone(), weights_of(ring)[k..].to_vec(), MonomialOrder::Grevlex)
}

/// Basis elements free of the first `k` variables, moved into the ring of
/// the remaining variables.
fn drop_leading_block<F: Field>(
    basis: &[Polynomial<F>],
    k: usize,
    n: usize,
    target: &Ring<F>,
) -> Vec<Polynomial<F>> {
    basis
        .iter()
        .filter(|g| (0..k).all(|i| g.lm().exponent(i) == 0))
        .map(|g| map_monomials(target, g, |m| m.slice(k, n)))
        .collect()
}

/// `I ∩ k[x_k, ..., x_{n-1}]` as an ideal of the ring of the remaining
/// variables (same grading, grevlex). The generators form its reduced
/// Gröbner basis.
pub fn eliminate<F: Field>(ideal: &Ideal<F>, k: usize) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if k > n {
        return Err(AlgebraError::OutOfRange(format!("cannot drop {k} of {n} variables")));
    }
    if k == 0 {
        return Ok(ideal.clone());
    }
    let block = ring.reordered(MonomialOrder::BlockElimination(k));
    let gens: Vec<_> = ideal.generators().iter().map(|g| block.convert(g)).collect();
    let basis = groebner_basis(&block, &gens, None);
    let target = tail_ring(ring, k)?;
    let kept = drop_leading_block(&basis, k, n, &target);
    Ok(Ideal::from_basis(target, kept))
}

/// Elements of the elimination ideal up to degree `bound`, from a truncated
/// Gröbner basis. They generate the elimination ideal in degrees `<= bound`.
pub fn eliminate_truncated<F: Field>(ideal: &Ideal<F>, k: usize, bound: u32) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if k > n {
        return Err(AlgebraError::OutOfRange(format!("cannot drop {k} of {n} variables")));
    }
    let block = ring.reordered(MonomialOrder::BlockElimination(k));
    let gens: Vec<_> = ideal.generators().iter().map(|g| block.convert(g)).collect();
    let basis = groebner_basis(&block, &gens, Some(bound));
    let target = tail_ring(ring, k)?;
    let kept = drop_leading_block(&basis, k, n, &target)
        .into_iter()
        .filter(|g| target.degree(g).is_some_and(|d| d <= bound))
        .collect();
    Ideal::new(target, kept)
}

/// Extra data for [`kernel_of_ring_map`].
#[derive(Clone, Debug)]
pub struct KernelOptions<F: Field> {
    /// Relations holding in the parameter ring (the map is from the ambient
    /// ring to the parameter ring modulo these).
    pub relations: Vec<Polynomial<F>>,
    /// Only compute kernel elements of degree at most this (ambient grading).
    pub degree_bound: Option<u32>,
}

impl<F: Field> Default for KernelOptions<F> {
    fn default() -> Self {
        KernelOptions { relations: Vec::new(), degree_bound: None }
    }
}

/// Kernel of `y_i ↦ images[i]` from the standard-graded `ambient` ring to
/// `params` modulo `options.relations`, via the graph ideal and elimination.
///
/// Images must be homogeneous of one common degree for the grading of
/// `params`. Every returned generator is checked to map to zero.
pub fn kernel_of_ring_map<F: Field>(
    ambient: &Ring<F>,
    params: &Ring<F>,
    images: &[Polynomial<F>],
    options: &KernelOptions<F>,
) -> Result<Ideal<F>> {
    if images.len() != ambient.nvars() {
        return Err(AlgebraError::ImageCount { expected: ambient.nvars(), got: images.len() });
    }
    if !ambient.is_standard_graded() {
        return Err(AlgebraError::RingMismatch("ambient ring must be standard graded".into()));
    }
    let mut degree = None;
    for f in images {
        params.check_owns(f)?;
        if !params.is_homogeneous(f) {
            return Err(AlgebraError::Inhomogeneous(params.format(f)));
        }
        if let Some(d) = params.degree(f) {
            if degree.is_some_and(|e| e != d) {
                return Err(AlgebraError::MixedDegrees);
            }
            degree = Some(d);
        }
    }
    for f in &options.relations {
        params.check_owns(f)?;
        if !params.is_homogeneous(f) {
            return Err(AlgebraError::Inhomogeneous(params.format(f)));
        }
    }
    let s = params.nvars();
    let n = ambient.nvars();
    let Some(d) = degree else {
        // every image vanishes
        let gens = (0..n).map(|i| ambient.var(i)).collect();
        return Ideal::new(ambient.clone(), gens);
    };
    if d == 0 {
        return Err(AlgebraError::Degenerate("images are constants".into()));
    }
    let mut weights = weights_of(params);
    weights.extend(std::iter::repeat_n(d, n));
    let graph = Ring::weighted(ambient.field().clone(), weights, MonomialOrder::BlockElimination(s))?;
    let k = graph.field();
    let mut gens = Vec::with_capacity(n + options.relations.len());
    for (i, f) in images.iter().enumerate() {
        let y = Monomial::var(s + i);
        let mut terms = vec![(k.one(), y)];
        terms.extend(f.terms().iter().map(|t| (k.neg(&t.coeff), t.mon)));
        gens.push(graph.from_terms(terms));
    }
    gens.extend(options.relations.iter().map(|f| graph.convert(f)));
    let bound = options.degree_bound.map(|b| b * d);
    let basis = groebner_basis(&graph, &gens, bound);
    let mut kernel: Vec<Polynomial<F>> = basis
        .iter()
        .filter(|g| (0..s).all(|i| g.lm().exponent(i) == 0))
        .map(|g| map_monomials(ambient, g, |m| m.slice(s, s + n)))
        .collect();
    if let Some(b) = options.degree_bound {
        kernel.retain(|g| ambient.degree(g).is_some_and(|e| e <= b));
    }
    // substitution check
    let rel = Reducer::new(params, &groebner_basis(params, &options.relations, None));
    for g in &kernel {
        let image = ambient.substitute(g, images, params)?;
        if !rel.reduce(&image).is_zero() {
            return Err(AlgebraError::Degenerate(format!(
                "kernel element {} does not vanish on the images",
                ambient.format(g)
            )));
        }
    }
    let ideal = if options.degree_bound.is_none() && ambient.order() == MonomialOrder::Grevlex {
        Ideal::from_basis(ambient.clone(), kernel)
    } else {
        Ideal::new(ambient.clone(), kernel)?
    };
    Ok(ideal.minimal_generators())
}

/// `I ∩ J` by eliminating `t` from `t·I + (1 − t)·J`.
pub fn intersect<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    let ring = i.ring();
    if ring != j.ring() {
        return Err(AlgebraError::RingMismatch("intersection of ideals in different rings".into()));
    }
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(ring.clone()));
    }
    let n = ring.nvars();
    let mut weights = vec![1];
    weights.extend(weights_of(ring));
    let big = Ring::weighted(ring.field().clone(), weights, MonomialOrder::BlockElimination(1))?;
    let k = big.field();
    let t = Monomial::var(0);
    let mut gens = Vec::new();
    for f in i.generators() {
        gens.push(map_monomials(&big, f, |m| m.shifted(1).mul(&t)));
    }
    for g in j.generators() {
        let terms: Vec<(F::Elem, Monomial)> = g
            .terms()
            .iter()
            .flat_map(|Term { coeff, mon }| {
                let m = mon.shifted(1);
                [(coeff.clone(), m), (k.neg(coeff), m.mul(&t))]
            })
            .collect();
        gens.push(big.from_terms(terms));
    }
    let basis = groebner_basis(&big, &gens, None);
    let target = Ring::weighted(ring.field().clone(), weights_of(ring), MonomialOrder::Grevlex)?;
    let kept = drop_leading_block(&basis, 1, n + 1, &target);
    if ring.order() == MonomialOrder::Grevlex {
        Ok(Ideal::from_basis(ring.clone(), kept))
    } else {
        Ideal::new(ring.clone(), kept.iter().map(|g| ring.convert(g)).collect())
    }
}

/// The chain `K_0 ⊆ K_1 ⊆ ...` of partial elimination ideals with respect
/// to one distinguished variable.
#[derive(Clone, Debug)]
pub struct PartialEliminationFamily<F: Field> {
    pub base: Ideal<F>,
    pub center: usize,
    /// `levels[i] = K_i`, ideals in the ring of the other variables (kept in
    /// their original relative order).
    pub levels: Vec<Ideal<F>>,
}

impl<F: Field> PartialEliminationFamily<F> {
    /// Checks `K_i ⊆ K_{i+1}` for all consecutive levels.
    pub fn is_chain(&self) -> bool {
        self.levels.windows(2).all(|w| w[0].generators().iter().all(|g| w[1].contains(g)))
    }
}

/// `K_i(I)`: the ideal of `f'` in the ring without the center variable such
/// that `x^i f' + (terms of lower x-degree)` lies in `I`, for `i ≤ max_level`.
///
/// Read off a Gröbner basis under an order where the center variable's
/// degree is compared first: `K_i` is generated by the top `x`-coefficients
/// of basis elements of `x`-degree at most `i`.
pub fn partial_elimination_ideals<F: Field>(
    ideal: &Ideal<F>,
    center: usize,
    max_level: usize,
) -> Result<PartialEliminationFamily<F>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if center >= n {
        return Err(AlgebraError::OutOfRange(format!("center x{center} not in a ring of {n} variables")));
    }
    // new index 0 is the center, the rest keep their relative order
    let perm: Vec<usize> = std::iter::once(center).chain((0..n).filter(|&i| i != center)).collect();
    let w = weights_of(ring);
    let pw: Vec<u32> = perm.iter().map(|&i| w[i]).collect();
    let moved = Ring::weighted(ring.field().clone(), pw, MonomialOrder::BlockElimination(1))?;
    let permute = |m: &Monomial| {
        let e: Vec<u32> = perm.iter().map(|&i| m.exponent(i)).collect();
        Monomial::from_exponents(&e).expect("same number of variables")
    };
    let gens: Vec<_> = ideal.generators().iter().map(|g| map_monomials(&moved, g, permute)).collect();
    let basis = groebner_basis(&moved, &gens, None);
    let rest = tail_ring(&moved, 1)?;
    let tops: Vec<(u32, Polynomial<F>)> = basis
        .iter()
        .map(|g| {
            let j = g.lm().exponent(0);
            let top = rest.from_terms(
                g.terms()
                    .iter()
                    .filter(|t| t.mon.exponent(0) == j)
                    .map(|t| (t.coeff.clone(), t.mon.slice(1, n))),
            );
            (j, top)
        })
        .collect();
    let mut levels = Vec::with_capacity(max_level + 1);
    for i in 0..=max_level {
        let gens: Vec<_> =
            tops.iter().filter(|(j, _)| *j as usize <= i).map(|(_, p)| p.clone()).collect();
        levels.push(Ideal::new(rest.clone(), gens)?);
    }
    Ok(PartialEliminationFamily { base: ideal.clone(), center, levels })
}
