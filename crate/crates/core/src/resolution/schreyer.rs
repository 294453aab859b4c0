//! Iterated Schreyer syzygies: a (generally non-minimal) free resolution
//! whose level `k+1` is the Gröbner basis of the syzygies of level `k`.

use std::cmp::Ordering;
use std::collections::HashSet;

use log::debug;

use super::complex::{FreeResolution, GradedFreeModule, GradedMatrix};
use super::module::{make_monic, normalize, reduce, ModTerm, ModuleOrder, ModuleReducer};
use crate::error::{AlgebraError, Result};
use crate::polycore::{Field, Monomial, Polynomial, Ring};

/// One level of the frame: monic elements of `F_{k-1}` in term form, the
/// order on `F_{k-1}` they are sorted in, and the degrees of the new basis.
struct Level<F: Field> {
    elems: Vec<Vec<ModTerm<F>>>,
    degrees: Vec<i32>,
}

/// Lex comparison of exponent vectors, used to order elements sharing a lead
/// component (this makes lead monomials lose one variable per level).
fn lex(a: &Monomial, b: &Monomial, n: usize) -> Ordering {
    (0..n).map(|i| a.exponent(i).cmp(&b.exponent(i))).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// Sorts elements by (lead component, lex of lead monomial).
fn sort_level<F: Field>(level: &mut Level<F>, n: usize) {
    let mut idx: Vec<usize> = (0..level.elems.len()).collect();
    idx.sort_by(|&a, &b| {
        let (ta, tb) = (&level.elems[a][0], &level.elems[b][0]);
        ta.comp.cmp(&tb.comp).then_with(|| lex(&ta.mon, &tb.mon, n)).then(a.cmp(&b))
    });
    let elems = idx.iter().map(|&i| std::mem::take(&mut level.elems[i])).collect();
    let degrees = idx.iter().map(|&i| level.degrees[i]).collect();
    level.elems = elems;
    level.degrees = degrees;
}

/// Schreyer order on the free module whose basis is `elems`, induced by the
/// order `prev` on their ambient module.
fn induced_order<F: Field>(prev: &ModuleOrder, elems: &[Vec<ModTerm<F>>]) -> ModuleOrder {
    let totals: Vec<Monomial> = elems.iter().map(|e| e[0].mon.mul(&prev.totals[e[0].comp])).collect();
    let mut idx: Vec<usize> = (0..elems.len()).collect();
    idx.sort_by_key(|&l| (prev.ranks[elems[l][0].comp], l));
    let mut ranks = vec![0u32; elems.len()];
    for (r, &l) in idx.iter().enumerate() {
        ranks[l] = r as u32;
    }
    ModuleOrder { totals, ranks, blocks: vec![0; elems.len()] }
}

/// Syzygies of `level` (a Gröbner basis under `prev`), as elements of the
/// free module on `level`'s elements.
fn next_level<F: Field>(
    ring: &Ring<F>,
    prev: &ModuleOrder,
    level: &Level<F>,
    order: &ModuleOrder,
    max_degree: Option<i32>,
) -> Result<Level<F>> {
    let k = ring.field();
    let n = ring.nvars();
    let reducer = ModuleReducer::new(&level.elems, prev.rank());
    let mut out = Level { elems: Vec::new(), degrees: Vec::new() };
    // elements grouped by lead component, in index order
    let mut by_comp: Vec<Vec<usize>> = vec![Vec::new(); prev.rank()];
    for (l, e) in level.elems.iter().enumerate() {
        by_comp[e[0].comp].push(l);
    }
    for group in &by_comp {
        for (pos, &j) in group.iter().enumerate() {
            let mj = level.elems[j][0].mon;
            // minimal generators of (m_i : m_j), i < j
            let mut quots: Vec<(Monomial, usize)> = Vec::new();
            let mut seen: HashSet<Monomial> = HashSet::new();
            for &i in &group[..pos] {
                let mi = level.elems[i][0].mon;
                let u = mi.lcm(&mj).div(&mj).unwrap();
                if seen.insert(u) {
                    quots.push((u, i));
                }
            }
            let minimal: Vec<(Monomial, usize)> = quots
                .iter()
                .filter(|(u, _)| !quots.iter().any(|(v, _)| v != u && v.divides(u)))
                .copied()
                .collect();
            for (uj, i) in minimal {
                let deg = level.degrees[j] + uj.total_degree() as i32;
                if max_degree.is_some_and(|d| deg > d) {
                    continue;
                }
                let mi = level.elems[i][0].mon;
                let ui = mi.lcm(&mj).div(&mi).unwrap();
                // S-pair uj*g_j - ui*g_i, without the cancelling leads
                let mut spair: Vec<ModTerm<F>> = Vec::new();
                for t in &level.elems[j][1..] {
                    spair.push(ModTerm { coeff: t.coeff.clone(), mon: t.mon.mul(&uj), comp: t.comp });
                }
                for t in &level.elems[i][1..] {
                    spair.push(ModTerm { coeff: k.neg(&t.coeff), mon: t.mon.mul(&ui), comp: t.comp });
                }
                let div = reduce(ring, prev, &reducer, spair, false);
                if !div.remainder.is_empty() {
                    return Err(AlgebraError::Degenerate(
                        "S-pair of a Gröbner basis failed to reduce to zero".into(),
                    ));
                }
                let mut syz = vec![
                    ModTerm { coeff: k.one(), mon: uj, comp: j },
                    ModTerm { coeff: k.neg(&k.one()), mon: ui, comp: i },
                ];
                for (c, q, l) in div.quotients {
                    syz.push(ModTerm { coeff: k.neg(&c), mon: q, comp: l });
                }
                let mut syz = normalize(ring, order, syz);
                debug_assert!(syz[0].comp == j && syz[0].mon == uj, "unexpected Schreyer lead term");
                make_monic(ring, &mut syz);
                out.elems.push(syz);
                out.degrees.push(deg);
            }
        }
    }
    sort_level(&mut out, n);
    Ok(out)
}

fn to_columns<F: Field>(ring: &Ring<F>, elems: &[Vec<ModTerm<F>>]) -> Vec<Vec<(usize, Polynomial<F>)>> {
    elems
        .iter()
        .map(|e| {
            let mut by_row: std::collections::BTreeMap<usize, Vec<(F::Elem, Monomial)>> =
                std::collections::BTreeMap::new();
            for t in e {
                by_row.entry(t.comp).or_default().push((t.coeff.clone(), t.mon));
            }
            by_row.into_iter().map(|(r, terms)| (r, ring.from_terms(terms))).collect()
        })
        .collect()
}

/// Schreyer resolution of `S/I` from the reduced Gröbner basis `basis` of a
/// homogeneous ideal `I` of the standard graded ring `ring`.
///
/// With `max_degree = Some(D)` only basis elements of degree at most `D` are
/// produced at every level; the graded pieces of degree `<= D` are exact.
pub fn schreyer_resolution<F: Field>(
    ring: &Ring<F>,
    basis: &[Polynomial<F>],
    max_degree: Option<i32>,
) -> Result<FreeResolution<F>> {
    if !ring.is_standard_graded() {
        return Err(AlgebraError::RingMismatch("resolutions need a standard graded ring".into()));
    }
    let n = ring.nvars();
    let mut modules = vec![GradedFreeModule::new(vec![0])];
    let mut maps: Vec<GradedMatrix<F>> = Vec::new();
    let basis: Vec<Polynomial<F>> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .filter(|g| max_degree.is_none_or(|d| ring.degree(g).unwrap() as i32 <= d))
        .map(|g| ring.monic(g))
        .collect();
    if basis.is_empty() {
        return Ok(FreeResolution { ring: ring.clone(), modules, maps, minimal: true });
    }
    let mut level = Level {
        elems: basis
            .iter()
            .map(|g| {
                g.terms().iter().map(|t| ModTerm { coeff: t.coeff.clone(), mon: t.mon, comp: 0 }).collect()
            })
            .collect(),
        degrees: basis.iter().map(|g| ring.degree(g).unwrap() as i32).collect(),
    };
    sort_level(&mut level, n);
    let mut prev = ModuleOrder::plain(1);
    loop {
        let order = induced_order(&prev, &level.elems);
        let source = GradedFreeModule::new(level.degrees.clone());
        let target = modules.last().unwrap().clone();
        let columns = to_columns(ring, &level.elems);
        maps.push(GradedMatrix { source: source.clone(), target, columns });
        modules.push(source);
        debug!("schreyer level {}: rank {}", modules.len() - 1, level.elems.len());
        if modules.len() > n + 2 {
            return Err(AlgebraError::Degenerate("resolution longer than the number of variables".into()));
        }
        let next = next_level(ring, &prev, &level, &order, max_degree)?;
        if next.elems.is_empty() {
            break;
        }
        prev = order;
        level = next;
    }
    let minimal = maps.iter().all(|m| !m.has_unit_entry());
    Ok(FreeResolution { ring: ring.clone(), modules, maps, minimal })
}
