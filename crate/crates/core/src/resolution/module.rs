//! Elements of graded free modules in term form, module monomial orders and
//! heap-based reduction.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::polycore::{Field, Monomial, Ring, SortKey};

/// `coeff * mon * e_comp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModTerm<F: Field> {
    pub coeff: F::Elem,
    pub mon: Monomial,
    pub comp: usize,
}

/// Sorts `(block, order key of mon * total, rank)` lexicographically.
pub type ModKey = (u32, SortKey, u32);

/// A monomial order on a free module with basis `e_0, ..., e_{r-1}`.
///
/// The term `m e_c` is compared by its block (larger first), then by
/// `m * totals[c]` in the ring order, then by `ranks[c]`. Schreyer orders have
/// a single block; position-over-term elimination uses two.
#[derive(Clone, Debug)]
pub struct ModuleOrder {
    pub totals: Vec<Monomial>,
    pub ranks: Vec<u32>,
    pub blocks: Vec<u32>,
}

impl ModuleOrder {
    /// Plain order on a free module of rank `r`: ties broken by index.
    pub fn plain(r: usize) -> Self {
        ModuleOrder {
            totals: vec![Monomial::one(); r],
            ranks: (0..r as u32).collect(),
            blocks: vec![0; r],
        }
    }

    pub fn rank(&self) -> usize {
        self.totals.len()
    }

    #[inline]
    pub fn key<F: Field>(&self, ring: &Ring<F>, mon: &Monomial, comp: usize) -> ModKey {
        (self.blocks[comp], ring.key(&mon.mul(&self.totals[comp])), self.ranks[comp])
    }
}

/// Sorts terms descending, merging equal terms and dropping zeros.
pub fn normalize<F: Field>(
    ring: &Ring<F>,
    order: &ModuleOrder,
    terms: Vec<ModTerm<F>>,
) -> Vec<ModTerm<F>> {
    let k = ring.field();
    let mut keyed: Vec<(ModKey, ModTerm<F>)> =
        terms.into_iter().map(|t| (order.key(ring, &t.mon, t.comp), t)).collect();
    keyed.sort_by(|a, b| b.0.cmp(&a.0));
    let mut out: Vec<ModTerm<F>> = Vec::with_capacity(keyed.len());
    let mut last: Option<ModKey> = None;
    for (key, t) in keyed {
        if last == Some(key) {
            let top = out.last_mut().unwrap();
            top.coeff = k.add(&top.coeff, &t.coeff);
        } else {
            if out.last().is_some_and(|t| k.is_zero(&t.coeff)) {
                out.pop();
            }
            out.push(t);
            last = Some(key);
        }
    }
    if out.last().is_some_and(|t| k.is_zero(&t.coeff)) {
        out.pop();
    }
    out
}

/// Makes the leading coefficient one.
pub fn make_monic<F: Field>(ring: &Ring<F>, v: &mut [ModTerm<F>]) {
    let k = ring.field();
    if let Some(first) = v.first() {
        if !k.is_one(&first.coeff) {
            let inv = k.inv(&first.coeff);
            for t in v.iter_mut() {
                t.coeff = k.mul(&t.coeff, &inv);
            }
        }
    }
}

struct HeapItem<F: Field> {
    key: ModKey,
    coeff: F::Elem,
    mon: Monomial,
    comp: usize,
}

impl<F: Field> PartialEq for HeapItem<F> {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}
impl<F: Field> Eq for HeapItem<F> {}
impl<F: Field> PartialOrd for HeapItem<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<F: Field> Ord for HeapItem<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

/// Lookup of reducers by component, with monic elements in term form.
pub struct ModuleReducer<'a, F: Field> {
    elems: &'a [Vec<ModTerm<F>>],
    by_comp: Vec<Vec<(usize, u32)>>,
}

impl<'a, F: Field> ModuleReducer<'a, F> {
    /// `elems` must be monic; `rank` is the rank of the ambient free module.
    pub fn new(elems: &'a [Vec<ModTerm<F>>], rank: usize) -> Self {
        let mut by_comp = vec![Vec::new(); rank];
        for (i, e) in elems.iter().enumerate() {
            if let Some(t) = e.first() {
                by_comp[t.comp].push((i, t.mon.mask()));
            }
        }
        ModuleReducer { elems, by_comp }
    }

    #[inline]
    pub fn find(&self, mon: &Monomial, comp: usize) -> Option<usize> {
        let mask = mon.mask();
        self.by_comp[comp]
            .iter()
            .find(|&&(i, m)| m & !mask == 0 && self.elems[i][0].mon.divides(mon))
            .map(|&(i, _)| i)
    }
}

/// Outcome of [`reduce`]: quotient terms `(coeff, mon, element index)` with
/// `v = sum coeff*mon*elems[l] + remainder`.
pub struct Division<F: Field> {
    pub quotients: Vec<(F::Elem, Monomial, usize)>,
    pub remainder: Vec<ModTerm<F>>,
}

/// Divides `v` by the reducer's elements. With `full = false` the reduction
/// stops at the first irreducible leading term.
pub fn reduce<F: Field>(
    ring: &Ring<F>,
    order: &ModuleOrder,
    reducer: &ModuleReducer<'_, F>,
    v: Vec<ModTerm<F>>,
    full: bool,
) -> Division<F> {
    let k = ring.field();
    let mut heap: BinaryHeap<HeapItem<F>> = v
        .into_iter()
        .map(|t| HeapItem { key: order.key(ring, &t.mon, t.comp), coeff: t.coeff, mon: t.mon, comp: t.comp })
        .collect();
    let mut quotients = Vec::new();
    let mut remainder = Vec::new();
    while let Some(top) = heap.pop() {
        let mut c = top.coeff;
        while heap.peek().is_some_and(|h| h.key == top.key) {
            c = k.add(&c, &heap.pop().unwrap().coeff);
        }
        if k.is_zero(&c) {
            continue;
        }
        match reducer.find(&top.mon, top.comp) {
            Some(l) => {
                let g = &reducer.elems[l];
                let q = top.mon.div(&g[0].mon).unwrap();
                let neg = k.neg(&c);
                for t in &g[1..] {
                    let mon = t.mon.mul(&q);
                    heap.push(HeapItem {
                        key: order.key(ring, &mon, t.comp),
                        coeff: k.mul(&neg, &t.coeff),
                        mon,
                        comp: t.comp,
                    });
                }
                quotients.push((c, q, l));
            }
            None => {
                remainder.push(ModTerm { coeff: c, mon: top.mon, comp: top.comp });
                if !full {
                    // drain the rest unreduced
                    let mut rest: Vec<ModTerm<F>> = Vec::new();
                    while let Some(h) = heap.pop() {
                        rest.push(ModTerm { coeff: h.coeff, mon: h.mon, comp: h.comp });
                    }
                    remainder.extend(rest);
                    remainder = normalize(ring, order, remainder);
                    break;
                }
            }
        }
    }
    Division { quotients, remainder }
}
