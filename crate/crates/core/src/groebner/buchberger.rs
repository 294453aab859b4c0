use std::collections::BTreeMap;

use log::debug;

use crate::error::{AlgebraError, Result};
use crate::polycore::{Field, Monomial, Polynomial, Ring, Term};

/// The S-polynomial `(L/lt(f)) f - (L/lt(g)) g`, `L = lcm(lm f, lm g)`.
pub fn s_polynomial<F: Field>(
    ring: &Ring<F>,
    f: &Polynomial<F>,
    g: &Polynomial<F>,
) -> Result<Polynomial<F>> {
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    ring.check_owns(f)?;
    ring.check_owns(g)?;
    let k = ring.field();
    let l = f.lm().lcm(&g.lm());
    let uf = l.div(&f.lm()).unwrap();
    let ug = l.div(&g.lm()).unwrap();
    let left = ring.mul_term(f, &k.inv(f.lc()), &uf);
    Ok(ring.add_scaled(&left, &k.neg(&k.inv(g.lc())), &ug, g))
}

/// Divisor lookup and full reduction against a fixed list of polynomials.
#[derive(Clone, Debug)]
pub struct Reducer<F: Field> {
    ring: Ring<F>,
    polys: Vec<Polynomial<F>>,
    lms: Vec<Monomial>,
    masks: Vec<u32>,
}

impl<F: Field> Reducer<F> {
    /// Zero polynomials are ignored; the others are made monic.
    pub fn new(ring: &Ring<F>, polys: &[Polynomial<F>]) -> Self {
        let mut r = Reducer { ring: ring.clone(), polys: Vec::new(), lms: Vec::new(), masks: Vec::new() };
        for p in polys {
            if !p.is_zero() {
                r.push(ring.monic(p));
            }
        }
        r
    }

    fn push(&mut self, p: Polynomial<F>) {
        let lm = p.lm();
        self.masks.push(lm.mask());
        self.lms.push(lm);
        self.polys.push(p);
    }

    /// Index of the first polynomial whose leading monomial divides `m`.
    #[inline]
    pub fn find(&self, m: &Monomial) -> Option<usize> {
        let mask = m.mask();
        (0..self.lms.len()).find(|&i| self.masks[i] & !mask == 0 && self.lms[i].divides(m))
    }

    pub fn polys(&self) -> &[Polynomial<F>] {
        &self.polys
    }

    /// Full reduction: no term of the result is divisible by a leading monomial.
    pub fn reduce(&self, f: &Polynomial<F>) -> Polynomial<F> {
        reduce_with(&self.ring, f.terms().to_vec(), |m| self.find(m).map(|i| &self.polys[i]))
    }
}

/// Reduces `terms` by the monic polynomials returned by `lookup`.
fn reduce_with<'a, F: Field>(
    ring: &Ring<F>,
    mut terms: Vec<Term<F>>,
    lookup: impl Fn(&Monomial) -> Option<&'a Polynomial<F>>,
) -> Polynomial<F> {
    let k = ring.field();
    let mut out: Vec<Term<F>> = Vec::new();
    let mut pos = 0;
    while pos < terms.len() {
        let t = &terms[pos];
        match lookup(&t.mon) {
            Some(g) => {
                let q = t.mon.div(&g.lm()).unwrap();
                let c = k.neg(&t.coeff);
                terms = ring.merge_terms(&terms[pos + 1..], &c, &q, &g.terms()[1..]);
                pos = 0;
            }
            None => {
                out.push(t.clone());
                pos += 1;
            }
        }
    }
    Polynomial::from_sorted_terms(out)
}

/// Remainder of `f` on division by `basis` (meaningful when `basis` is a
/// Gröbner basis).
pub fn normal_form_by<F: Field>(
    ring: &Ring<F>,
    f: &Polynomial<F>,
    basis: &[Polynomial<F>],
) -> Polynomial<F> {
    Reducer::new(ring, basis).reduce(f)
}

struct Entry<F: Field> {
    poly: Polynomial<F>,
    lm: Monomial,
    mask: u32,
    sugar: u32,
    redundant: bool,
}

/// Queue key: (sugar, lcm degree, i, j). Smallest first.
type PairKey = (u32, u32, usize, usize);

struct Engine<'r, F: Field> {
    ring: &'r Ring<F>,
    basis: Vec<Entry<F>>,
    pairs: BTreeMap<PairKey, Monomial>,
    homogeneous: bool,
}

impl<F: Field> Engine<'_, F> {
    fn find(&self, m: &Monomial) -> Option<&Polynomial<F>> {
        let mask = m.mask();
        self.basis
            .iter()
            .find(|e| !e.redundant && e.mask & !mask == 0 && e.lm.divides(m))
            .map(|e| &e.poly)
    }

    fn reduce(&self, f: Polynomial<F>) -> Polynomial<F> {
        reduce_with(self.ring, f.into_terms(), |m| self.find(m))
    }

    fn spoly_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let (a, b) = (&self.basis[i], &self.basis[j]);
        let da = self.ring.degree_of(&lcm.div(&a.lm).unwrap());
        let db = self.ring.degree_of(&lcm.div(&b.lm).unwrap());
        (a.sugar + da).max(b.sugar + db)
    }

    /// Adds a monic, fully reduced polynomial with the Gebauer–Möller update.
    fn insert(&mut self, h: Polynomial<F>, sugar: u32) {
        let t = self.basis.len();
        let lm_t = h.lm();
        // B_k criterion on existing pairs
        let ring = self.ring;
        let basis = &self.basis;
        self.pairs.retain(|&(_, _, i, j), lcm| {
            if !lm_t.divides(lcm) {
                return true;
            }
            let li = basis[i].lm.lcm(&lm_t);
            let lj = basis[j].lm.lcm(&lm_t);
            li == *lcm || lj == *lcm
        });
        // candidate new pairs
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for (i, e) in self.basis.iter().enumerate() {
            if e.redundant {
                continue;
            }
            cands.push((i, e.lm.lcm(&lm_t), e.lm.is_coprime(&lm_t)));
        }
        // M criterion: drop (i,t) when some (j,t) has an lcm properly dividing it
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            for b in 0..cands.len() {
                if a != b && cands[b].1 != cands[a].1 && cands[b].1.divides(&cands[a].1) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // F criterion: one pair per lcm; if any of them is coprime, none
        let mut by_lcm: BTreeMap<Vec<u32>, (usize, bool)> = BTreeMap::new();
        for (a, (_, lcm, coprime)) in cands.iter().enumerate() {
            if !keep[a] {
                continue;
            }
            let key = lcm.exponents(ring.nvars());
            let entry = by_lcm.entry(key).or_insert((a, false));
            entry.1 |= *coprime;
        }
        let mut new_pairs = Vec::new();
        for (_, (a, any_coprime)) in by_lcm {
            if !any_coprime {
                new_pairs.push(a);
            }
        }
        let mask = lm_t.mask();
        for e in self.basis.iter_mut() {
            if !e.redundant && lm_t.divides(&e.lm) && e.mask | mask == e.mask {
                e.redundant = true;
            }
        }
        self.basis.push(Entry { mask: lm_t.mask(), lm: lm_t, poly: h, sugar, redundant: false });
        for a in new_pairs {
            let (i, lcm, _) = &cands[a];
            let s = self.spoly_sugar(*i, t, lcm);
            let d = ring.degree_of(lcm);
            self.pairs.insert((s, d, *i, t), *lcm);
        }
    }
}

/// Reduced monic Gröbner basis of the ideal generated by `generators` under
/// the order of `ring`, sorted ascending by leading monomial.
///
/// With `bound = Some(D)` only S-pairs of degree at most `D` are treated; for
/// homogeneous input the result agrees with the true basis in degrees `<= D`.
pub fn groebner_basis<F: Field>(
    ring: &Ring<F>,
    generators: &[Polynomial<F>],
    bound: Option<u32>,
) -> Vec<Polynomial<F>> {
    let homogeneous = generators.iter().all(|g| ring.is_homogeneous(g));
    let bound = if homogeneous { bound } else { None };
    let mut inputs: Vec<(u32, usize)> = generators
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, g)| (ring.degree(g).unwrap(), i))
        .collect();
    inputs.sort_unstable();
    let mut engine = Engine { ring, basis: Vec::new(), pairs: BTreeMap::new(), homogeneous };
    let mut next_input = 0;
    let mut reductions = 0usize;
    let mut zero_reductions = 0usize;
    loop {
        let pair_sugar = engine.pairs.keys().next().map(|k| k.0);
        let input_sugar = inputs.get(next_input).map(|x| x.0);
        let (poly, sugar) = match (input_sugar, pair_sugar) {
            (None, None) => break,
            (Some(si), sp) if sp.is_none_or(|sp| si <= sp) => {
                let (s, idx) = inputs[next_input];
                next_input += 1;
                if bound.is_some_and(|b| s > b) {
                    continue;
                }
                (generators[idx].clone(), s)
            }
            _ => {
                let (key, lcm) = engine.pairs.pop_first().unwrap();
                let (s, d, i, j) = key;
                if bound.is_some_and(|b| d > b) {
                    engine.pairs.clear();
                    continue;
                }
                let (fi, fj) = (&engine.basis[i].poly, &engine.basis[j].poly);
                let ui = lcm.div(&fi.lm()).unwrap();
                let uj = lcm.div(&fj.lm()).unwrap();
                let left = ring.mul_term(fi, &ring.field().one(), &ui);
                let sp = ring.add_scaled(&left, &ring.field().neg(&ring.field().one()), &uj, fj);
                (sp, s)
            }
        };
        reductions += 1;
        let h = engine.reduce(poly);
        if h.is_zero() {
            zero_reductions += 1;
            continue;
        }
        let h = ring.monic(&h);
        if h.lm().is_one() {
            // unit ideal
            return vec![ring.one()];
        }
        engine.insert(h, sugar);
    }
    debug!(
        "buchberger: {} reductions, {} to zero, {} basis elements{}",
        reductions,
        zero_reductions,
        engine.basis.iter().filter(|e| !e.redundant).count(),
        if engine.homogeneous { "" } else { " (inhomogeneous)" }
    );
    let kept: Vec<Polynomial<F>> =
        engine.basis.into_iter().filter(|e| !e.redundant).map(|e| e.poly).collect();
    interreduce(ring, kept)
}

/// Turns a Gröbner basis with pairwise non-dividing leading monomials into
/// the reduced one.
fn interreduce<F: Field>(ring: &Ring<F>, mut polys: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    polys.sort_by(|a, b| ring.cmp(&a.lm(), &b.lm()));
    // drop elements whose leading monomial is divisible by another's
    let lms: Vec<Monomial> = polys.iter().map(|p| p.lm()).collect();
    let mut keep = vec![true; polys.len()];
    for i in 0..polys.len() {
        for j in 0..polys.len() {
            if i != j && keep[j] && lms[j].divides(&lms[i]) && (lms[j] != lms[i] || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let polys: Vec<Polynomial<F>> =
        polys.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
    let reducer = Reducer::new(ring, &polys);
    let mut out = Vec::with_capacity(polys.len());
    for (i, p) in polys.iter().enumerate() {
        let lt = p.terms()[0].clone();
        let tail = Polynomial::from_sorted_terms(p.terms()[1..].to_vec());
        let others = |m: &Monomial| {
            let mask = m.mask();
            (0..reducer.lms.len())
                .find(|&j| j != i && reducer.masks[j] & !mask == 0 && reducer.lms[j].divides(m))
                .map(|j| &reducer.polys[j])
        };
        let tail = reduce_with(ring, tail.into_terms(), others);
        let mut terms = vec![lt];
        terms.extend(tail.into_terms());
        out.push(ring.monic(&Polynomial::from_sorted_terms(terms)));
    }
    out
}
