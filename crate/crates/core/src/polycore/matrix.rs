use std::collections::BTreeMap;

use super::field::Field;

/// Sparse matrix over a field, stored as per-row lists of `(column, value)`
/// sorted by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix<F: Field> {
    field: F,
    cols: usize,
    rows: Vec<Vec<(usize, F::Elem)>>,
}

/// Result of [`ExactMatrix::row_reduce`].
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    pub matrix: ExactMatrix<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        ExactMatrix { field, cols, rows: vec![Vec::new(); rows] }
    }

    pub fn from_dense(field: F, data: &[Vec<F::Elem>]) -> Self {
        let cols = data.first().map_or(0, |r| r.len());
        let rows = data
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix");
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !field.is_zero(v))
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        ExactMatrix { field, cols, rows }
    }

    pub fn from_i64(field: F, data: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<F::Elem>> =
            data.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Self::from_dense(field, &dense)
    }

    /// Builds a matrix from sparse rows; entries need not be sorted.
    pub fn from_sparse_rows(field: F, cols: usize, rows: Vec<Vec<(usize, F::Elem)>>) -> Self {
        let rows = rows
            .into_iter()
            .map(|r| {
                let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
                for (j, v) in r {
                    assert!(j < cols);
                    let e = acc.entry(j).or_insert_with(|| field.zero());
                    *e = field.add(e, &v);
                }
                acc.into_iter().filter(|(_, v)| !field.is_zero(v)).collect()
            })
            .collect();
        ExactMatrix { field, cols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn row(&self, i: usize) -> &[(usize, F::Elem)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> F::Elem {
        self.rows[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .map(|k| self.rows[i][k].1.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => {
                if self.field.is_zero(&v) {
                    row.remove(k);
                } else {
                    row[k].1 = v;
                }
            }
            Err(k) => {
                if !self.field.is_zero(&v) {
                    row.insert(k, (j, v));
                }
            }
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<F::Elem>> {
        (0..self.nrows()).map(|i| (0..self.cols).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        ExactMatrix {
            field: self.field.clone(),
            cols: self.cols,
            rows: perm.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    /// Reduced row-echelon form with monic pivots. Zero rows are dropped from
    /// the echelon matrix, so it has exactly `rank` rows.
    pub fn row_reduce(&self) -> Echelon<F> {
        let k = &self.field;
        let mut pivot_rows: BTreeMap<usize, Vec<(usize, F::Elem)>> = BTreeMap::new();
        let mut dense: Vec<F::Elem> = vec![k.zero(); self.cols];
        for row in &self.rows {
            if row.is_empty() {
                continue;
            }
            for (j, v) in row {
                dense[*j] = v.clone();
            }
            let first = row[0].0;
            for c in first..self.cols {
                if k.is_zero(&dense[c]) {
                    continue;
                }
                if let Some(prow) = pivot_rows.get(&c) {
                    let factor = dense[c].clone();
                    for (j, v) in prow {
                        dense[*j] = k.sub_mul(&dense[*j], &factor, v);
                    }
                }
            }
            let lead = (first..self.cols).find(|&c| !k.is_zero(&dense[c]));
            if let Some(lead) = lead {
                let inv = k.inv(&dense[lead]);
                let mut new_row = Vec::new();
                for (c, slot) in dense.iter_mut().enumerate().skip(lead) {
                    if !k.is_zero(slot) {
                        new_row.push((c, k.mul(slot, &inv)));
                        *slot = k.zero();
                    }
                }
                pivot_rows.insert(lead, new_row);
            }
            for slot in dense.iter_mut() {
                if !k.is_zero(slot) {
                    *slot = k.zero();
                }
            }
        }
        // back substitution: clear entries above each pivot
        let pivots: Vec<usize> = pivot_rows.keys().copied().collect();
        for (idx, &pc) in pivots.iter().enumerate().rev() {
            let prow = pivot_rows[&pc].clone();
            for &qc in &pivots[..idx] {
                let qrow = pivot_rows.get_mut(&qc).unwrap();
                if let Ok(pos) = qrow.binary_search_by_key(&pc, |(c, _)| *c) {
                    let factor = qrow[pos].1.clone();
                    let mut acc: BTreeMap<usize, F::Elem> = qrow.drain(..).collect();
                    for (j, v) in &prow {
                        let e = acc.entry(*j).or_insert_with(|| k.zero());
                        *e = k.sub_mul(e, &factor, v);
                    }
                    *qrow = acc.into_iter().filter(|(_, v)| !k.is_zero(v)).collect();
                }
            }
        }
        let rank = pivots.len();
        let rows: Vec<_> = pivot_rows.into_values().collect();
        Echelon {
            matrix: ExactMatrix { field: k.clone(), cols: self.cols, rows },
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().rank
    }
}
