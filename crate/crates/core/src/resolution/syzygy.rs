//! Syzygies of an arbitrary graded matrix by a module Gröbner basis of the
//! graph `[M; 1]`, eliminating the target block.

use std::collections::HashMap;

use super::complex::{GradedFreeModule, GradedMatrix};
use super::module::{make_monic, normalize, reduce, ModTerm, ModuleOrder, ModuleReducer};
use crate::error::Result;
use crate::polycore::{Field, Monomial, Ring};

fn degree_of<F: Field>(twists: &[i32], v: &[ModTerm<F>]) -> i32 {
    let t = &v[0];
    twists[t.comp] + t.mon.total_degree() as i32
}

/// Generators of the module of relations among the columns of `m`, as the
/// columns of a matrix into `m.source`. The result is minimal: no column is
/// in the span of the others.
pub fn module_syzygies<F: Field>(ring: &Ring<F>, m: &GradedMatrix<F>) -> Result<GradedMatrix<F>> {
    let k = ring.field();
    let r = m.nrows();
    let s = m.ncols();
    // components 0..r: target (dominant block), r..r+s: source
    let mut order = ModuleOrder::plain(r + s);
    for b in order.blocks.iter_mut().take(r) {
        *b = 1;
    }
    let twists: Vec<i32> = m.target.twists.iter().chain(&m.source.twists).copied().collect();
    let mut gens: Vec<Vec<ModTerm<F>>> = m
        .columns
        .iter()
        .enumerate()
        .map(|(b, col)| {
            let mut terms: Vec<ModTerm<F>> = col
                .iter()
                .flat_map(|(a, p)| p.terms().iter().map(|t| ModTerm { coeff: t.coeff.clone(), mon: t.mon, comp: *a }))
                .collect();
            terms.push(ModTerm { coeff: k.one(), mon: Monomial::one(), comp: r + b });
            let mut v = normalize(ring, &order, terms);
            make_monic(ring, &mut v);
            v
        })
        .collect();
    gens.sort_by_key(|v| degree_of(&twists, v));

    // Buchberger, pairs handled in increasing degree
    let mut basis: Vec<Vec<ModTerm<F>>> = Vec::new();
    let mut pairs: Vec<(i32, usize, usize)> = Vec::new();
    let mut pending = gens.into_iter().peekable();
    loop {
        let next_gen_deg = pending.peek().map(|v| degree_of(&twists, v));
        let next_pair_deg = pairs.iter().map(|p| p.0).min();
        let candidate = match (next_gen_deg, next_pair_deg) {
            (None, None) => break,
            (Some(g), Some(p)) if p < g => None,
            (Some(_), _) => pending.next(),
            (None, Some(_)) => None,
        };
        let v = match candidate {
            Some(v) => v,
            None => {
                let pos = pairs.iter().enumerate().min_by_key(|(_, p)| (p.0, p.1, p.2)).unwrap().0;
                let (_, i, j) = pairs.swap_remove(pos);
                spair(ring, &basis[i], &basis[j])
            }
        };
        let reducer = ModuleReducer::new(&basis, r + s);
        let div = reduce(ring, &order, &reducer, v, true);
        let mut h = div.remainder;
        if h.is_empty() {
            continue;
        }
        make_monic(ring, &mut h);
        let new = basis.len();
        for (i, g) in basis.iter().enumerate() {
            if g[0].comp == h[0].comp {
                let l = g[0].mon.lcm(&h[0].mon);
                pairs.push((twists[h[0].comp] + l.total_degree() as i32, i, new));
            }
        }
        basis.push(h);
    }

    // elements without target part
    let mut syz: Vec<Vec<ModTerm<F>>> = basis.into_iter().filter(|v| v[0].comp >= r).collect();
    syz.sort_by_key(|v| degree_of(&twists, v));
    let degs: Vec<i32> = syz.iter().map(|v| degree_of(&twists, v)).collect();
    let keep = minimal_subset(ring, &m.source.twists, r, &syz, &degs);
    let mut source = Vec::new();
    let mut columns = Vec::new();
    for i in keep {
        source.push(degs[i]);
        let mut by_row: std::collections::BTreeMap<usize, Vec<(F::Elem, Monomial)>> = Default::default();
        for t in &syz[i] {
            by_row.entry(t.comp - r).or_default().push((t.coeff.clone(), t.mon));
        }
        columns.push(by_row.into_iter().map(|(a, ts)| (a, ring.from_terms(ts))).collect());
    }
    GradedMatrix::new(ring, GradedFreeModule::new(source), m.source.clone(), columns)
}

/// S-vector of two elements with the same lead component.
fn spair<F: Field>(ring: &Ring<F>, f: &[ModTerm<F>], g: &[ModTerm<F>]) -> Vec<ModTerm<F>> {
    let k = ring.field();
    let l = f[0].mon.lcm(&g[0].mon);
    let (uf, ug) = (l.div(&f[0].mon).unwrap(), l.div(&g[0].mon).unwrap());
    let mut out: Vec<ModTerm<F>> =
        f[1..].iter().map(|t| ModTerm { coeff: t.coeff.clone(), mon: t.mon.mul(&uf), comp: t.comp }).collect();
    out.extend(g[1..].iter().map(|t| ModTerm { coeff: k.neg(&t.coeff), mon: t.mon.mul(&ug), comp: t.comp }));
    out
}

/// Indices of a minimal generating subset, by degree-wise linear algebra over
/// `(monomial, component)` coordinates. `syz` is sorted by degree.
fn minimal_subset<F: Field>(
    ring: &Ring<F>,
    twists: &[i32],
    shift: usize,
    syz: &[Vec<ModTerm<F>>],
    degs: &[i32],
) -> Vec<usize> {
    let k = ring.field();
    let n = ring.nvars();
    let mut kept: Vec<usize> = Vec::new();
    for (i, v) in syz.iter().enumerate() {
        let d = degs[i];
        // echelon of the degree-d part of the span of kept generators
        let mut pivots: HashMap<(Monomial, usize), Vec<ModTerm<F>>> = HashMap::new();
        let insert = |mut w: Vec<ModTerm<F>>, pivots: &mut HashMap<(Monomial, usize), Vec<ModTerm<F>>>| -> bool {
            let order = ModuleOrder::plain(twists.len() + shift);
            loop {
                w = normalize(ring, &order, w);
                let Some(lead) = w.first() else { return false };
                match pivots.get(&(lead.mon, lead.comp)) {
                    Some(p) => {
                        let c = k.div(&lead.coeff, &p[0].coeff);
                        let sub: Vec<ModTerm<F>> =
                            p.iter().map(|t| ModTerm { coeff: k.neg(&k.mul(&c, &t.coeff)), ..t.clone() }).collect();
                        w.extend(sub);
                    }
                    None => {
                        pivots.insert((lead.mon, lead.comp), w);
                        return true;
                    }
                }
            }
        };
        for &j in &kept {
            let e = (d - degs[j]) as u32;
            for mono in monomials_of_degree(n, e) {
                let w = syz[j].iter().map(|t| ModTerm { coeff: t.coeff.clone(), mon: t.mon.mul(&mono), comp: t.comp }).collect();
                insert(w, &mut pivots);
            }
        }
        if insert(v.clone(), &mut pivots) {
            kept.push(i);
        }
    }
    kept
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == e.len() {
            e[i] = left;
            out.push(Monomial::from_exponents(e).unwrap());
            return;
        }
        for a in (0..=left).rev() {
            e[i] = a;
            rec(i + 1, left - a, e, out);
        }
    }
    if n > 0 {
        rec(0, d, &mut e, &mut out);
    }
    out
}
