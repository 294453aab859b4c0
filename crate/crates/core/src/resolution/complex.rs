use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::polycore::{ExactMatrix, Field, Polynomial, Ring};

/// A free module `⊕ S(-a_i)`, described by the degrees `a_i` of its basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedFreeModule {
    pub twists: Vec<i32>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<i32>) -> Self {
        GradedFreeModule { twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    /// Number of basis elements of degree `d`.
    pub fn count(&self, d: i32) -> usize {
        self.twists.iter().filter(|&&t| t == d).count()
    }
}

/// A degree-preserving map between graded free modules, stored by columns:
/// `columns[j]` is the image of the `j`-th source basis element as sparse
/// `(row, entry)` pairs with increasing rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix<F: Field> {
    pub source: GradedFreeModule,
    pub target: GradedFreeModule,
    pub columns: Vec<Vec<(usize, Polynomial<F>)>>,
}

impl<F: Field> GradedMatrix<F> {
    /// Validates that entry `(a, b)` is zero or homogeneous of degree
    /// `source[b] - target[a]`.
    pub fn new(
        ring: &Ring<F>,
        source: GradedFreeModule,
        target: GradedFreeModule,
        columns: Vec<Vec<(usize, Polynomial<F>)>>,
    ) -> Result<Self> {
        if columns.len() != source.rank() {
            return Err(AlgebraError::OutOfRange("column count differs from source rank".into()));
        }
        for (b, col) in columns.iter().enumerate() {
            for (a, p) in col {
                if *a >= target.rank() {
                    return Err(AlgebraError::OutOfRange(format!("row {a} outside the target")));
                }
                if p.is_zero() {
                    continue;
                }
                let want = source.twists[b] - target.twists[*a];
                if !ring.is_homogeneous(p) || ring.degree(p).map(|d| d as i32) != Some(want) {
                    return Err(AlgebraError::Inhomogeneous(format!(
                        "entry ({a},{b}) = {} should have degree {want}",
                        ring.format(p)
                    )));
                }
            }
        }
        let columns = columns
            .into_iter()
            .map(|mut c| {
                c.retain(|(_, p)| !p.is_zero());
                c.sort_by_key(|(a, _)| *a);
                c
            })
            .collect();
        Ok(GradedMatrix { source, target, columns })
    }

    /// A `1 × n` matrix with the given polynomials.
    pub fn row(ring: &Ring<F>, polys: &[Polynomial<F>]) -> Result<Self> {
        let twists = polys
            .iter()
            .map(|p| ring.degree(p).map(|d| d as i32).ok_or(AlgebraError::ZeroInput))
            .collect::<Result<Vec<_>>>()?;
        let cols = polys.iter().map(|p| vec![(0, p.clone())]).collect();
        GradedMatrix::new(ring, GradedFreeModule::new(twists), GradedFreeModule::new(vec![0]), cols)
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, a: usize, b: usize) -> Option<&Polynomial<F>> {
        self.columns[b].iter().find(|(r, _)| *r == a).map(|(_, p)| p)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    /// `self ∘ other`.
    pub fn compose(&self, ring: &Ring<F>, other: &GradedMatrix<F>) -> GradedMatrix<F> {
        assert_eq!(other.nrows(), self.ncols());
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, Polynomial<F>> = BTreeMap::new();
                for (k, q) in col {
                    for (a, p) in &self.columns[*k] {
                        let e = acc.entry(*a).or_default();
                        *e = ring.add(e, &ring.mul(p, q));
                    }
                }
                acc.into_iter().filter(|(_, p)| !p.is_zero()).collect()
            })
            .collect();
        GradedMatrix { source: other.source.clone(), target: self.target.clone(), columns }
    }

    /// Whether some entry is a nonzero constant.
    pub fn has_unit_entry(&self) -> bool {
        self.columns.iter().flatten().any(|(_, p)| p.total_degree() == Some(0))
    }

    /// The matrix evaluated at a point.
    pub fn evaluate(&self, ring: &Ring<F>, point: &[F::Elem]) -> ExactMatrix<F> {
        // rows of the result are the source elements (transpose), which has the same rank
        let rows = self
            .columns
            .iter()
            .map(|c| c.iter().map(|(a, p)| (*a, ring.evaluate(p, point))).collect())
            .collect();
        ExactMatrix::from_sparse_rows(ring.field().clone(), self.nrows(), rows)
    }

    /// Scalar part between basis elements of degree `d`: rows are source
    /// elements, columns are target elements.
    pub fn scalar_block(&self, field: &F, d: i32) -> ExactMatrix<F> {
        let tgt: Vec<usize> = (0..self.nrows()).filter(|&a| self.target.twists[a] == d).collect();
        let pos: BTreeMap<usize, usize> = tgt.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let rows = (0..self.ncols())
            .filter(|&b| self.source.twists[b] == d)
            .map(|b| {
                self.columns[b]
                    .iter()
                    .filter_map(|(a, p)| {
                        let i = pos.get(a)?;
                        p.constant_coeff().map(|c| (*i, c.clone()))
                    })
                    .collect()
            })
            .collect();
        ExactMatrix::from_sparse_rows(field.clone(), tgt.len(), rows)
    }
}

/// A graded free resolution `0 ← F_0 ← F_1 ← ... ← F_n ← 0` of `S/I`.
#[derive(Clone, Debug)]
pub struct FreeResolution<F: Field> {
    pub ring: Ring<F>,
    /// `F_0, F_1, ...`
    pub modules: Vec<GradedFreeModule>,
    /// `maps[i] = d_{i+1} : F_{i+1} → F_i`
    pub maps: Vec<GradedMatrix<F>>,
    pub minimal: bool,
}

impl<F: Field> FreeResolution<F> {
    /// Index of the last nonzero module.
    pub fn length(&self) -> usize {
        self.modules.iter().rposition(|m| m.rank() > 0).unwrap_or(0)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    /// `d_i ∘ d_{i+1} = 0` for every consecutive pair.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].compose(&self.ring, &w[1]).is_zero())
    }

    /// No differential has a nonzero constant entry.
    pub fn has_no_unit_entries(&self) -> bool {
        self.maps.iter().all(|m| !m.has_unit_entry())
    }

    /// Rank condition `rank d_i + rank d_{i+1} = rank F_i` for `i ≥ 1`, with
    /// ranks taken at seeded random points off `V(I)` (a lower bound for the
    /// generic rank; two points are used). Off `V(I)` the localized complex
    /// is split exact, so the condition is necessary there.
    pub fn exactness_certificate(&self, seed: u64) -> bool {
        let field = self.ring.field();
        let mut best = vec![0usize; self.maps.len()];
        // decorrelate from point samplers that share the caller's seed
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5EED_CE27_1F1C_A7E5);
        let mut used = 0;
        for _ in 0..16 {
            if used == 2 || self.maps.is_empty() {
                break;
            }
            let point: Vec<F::Elem> = (0..self.ring.nvars()).map(|_| field.random(&mut rng)).collect();
            let ranks: Vec<usize> = self.maps.iter().map(|m| m.evaluate(&self.ring, &point).rank()).collect();
            if ranks[0] == 0 {
                continue; // the point lies on V(I)
            }
            used += 1;
            for (b, r) in best.iter_mut().zip(ranks) {
                *b = (*b).max(r);
            }
        }
        (1..self.modules.len()).all(|i| {
            let left = best[i - 1];
            let right = best.get(i).copied().unwrap_or(0);
            left + right == self.modules[i].rank()
        })
    }
}

/// Removes unit entries by Gaussian cancellation until none is left.
pub fn minimalize<F: Field>(res: &FreeResolution<F>) -> FreeResolution<F> {
    let ring = &res.ring;
    let k = ring.field();
    let nmaps = res.maps.len();
    // mutable copies: per map, columns as row-maps
    let mut cols: Vec<Vec<BTreeMap<usize, Polynomial<F>>>> = res
        .maps
        .iter()
        .map(|m| m.columns.iter().map(|c| c.iter().cloned().collect()).collect())
        .collect();
    let mut alive: Vec<Vec<bool>> = res.modules.iter().map(|m| vec![true; m.rank()]).collect();
    for level in 0..nmaps {
        // rows -> columns containing them, for map `level` (d_{level+1})
        let nrows = res.modules[level].rank();
        let mut row_index: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nrows];
        for (b, col) in cols[level].iter().enumerate() {
            for a in col.keys() {
                row_index[*a].insert(b);
            }
        }
        loop {
            let mut changed = false;
            for a in 0..cols[level].len() {
                if !alive[level + 1][a] {
                    continue;
                }
                let unit = cols[level][a]
                    .iter()
                    .find(|(r, p)| alive[level][**r] && p.total_degree() == Some(0))
                    .map(|(r, p)| (*r, p.terms()[0].coeff.clone()));
                let Some((b, c)) = unit else { continue };
                changed = true;
                let inv_c = k.inv(&c);
                let col_a: Vec<(usize, Polynomial<F>)> = cols[level][a]
                    .iter()
                    .filter(|(r, _)| **r != b)
                    .map(|(r, p)| (*r, p.clone()))
                    .collect();
                let row_b: Vec<usize> = row_index[b].iter().copied().filter(|&y| y != a).collect();
                for y in row_b {
                    let Some(dby) = cols[level][y].remove(&b) else { continue };
                    let factor = ring.scale(&dby, &k.neg(&inv_c));
                    for (x, p) in &col_a {
                        let prod = ring.mul(p, &factor);
                        let entry = cols[level][y].entry(*x).or_default();
                        *entry = ring.add(entry, &prod);
                        if entry.is_zero() {
                            cols[level][y].remove(x);
                            row_index[*x].remove(&y);
                        } else {
                            row_index[*x].insert(y);
                        }
                    }
                }
                row_index[b].clear();
                for r in cols[level][a].keys() {
                    row_index[*r].remove(&a);
                }
                cols[level][a].clear();
                alive[level + 1][a] = false;
                alive[level][b] = false;
                // d_{level}: drop column b; d_{level+2}: drop row a
                if level > 0 {
                    cols[level - 1][b].clear();
                }
                if level + 1 < nmaps {
                    for col in cols[level + 1].iter_mut() {
                        col.remove(&a);
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
    // compact
    let renumber: Vec<Vec<usize>> = alive
        .iter()
        .map(|v| {
            let mut next = 0;
            v.iter()
                .map(|&keep| {
                    let i = next;
                    if keep {
                        next += 1;
                    }
                    i
                })
                .collect()
        })
        .collect();
    let mut modules: Vec<GradedFreeModule> = res
        .modules
        .iter()
        .zip(&alive)
        .map(|(m, a)| {
            GradedFreeModule::new(m.twists.iter().zip(a).filter(|(_, k)| **k).map(|(t, _)| *t).collect())
        })
        .collect();
    let mut maps: Vec<GradedMatrix<F>> = Vec::with_capacity(nmaps);
    for level in 0..nmaps {
        let columns: Vec<Vec<(usize, Polynomial<F>)>> = cols[level]
            .iter()
            .enumerate()
            .filter(|(b, _)| alive[level + 1][*b])
            .map(|(_, col)| {
                col.iter()
                    .filter(|(a, _)| alive[level][**a])
                    .map(|(a, p)| (renumber[level][*a], p.clone()))
                    .collect()
            })
            .collect();
        maps.push(GradedMatrix {
            source: modules[level + 1].clone(),
            target: modules[level].clone(),
            columns,
        });
    }
    while modules.len() > 1 && modules.last().is_some_and(|m| m.rank() == 0) {
        modules.pop();
        maps.pop();
    }
    FreeResolution { ring: ring.clone(), modules, maps, minimal: true }
}
