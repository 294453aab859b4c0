use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::complex::FreeResolution;
use crate::error::{AlgebraError, Result};
use crate::polycore::{ExactMatrix, Field};

/// Graded Betti numbers `β_{i,j}`: the number of degree `i+j` generators of
/// `F_i` in a minimal resolution. Zero entries are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new() -> Self {
        BettiTable::default()
    }

    /// Builds a table from `(i, j, β)` triples; zeros are skipped.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, usize, u64)>) -> Self {
        let mut t = BettiTable::new();
        for (i, j, b) in entries {
            t.set(i, j, b);
        }
        t
    }

    /// Rows of the table: `rows[j][p]` is `β_{first_col[j] + p, j}`.
    pub fn from_rows(rows: &[(usize, usize, &[u64])]) -> Self {
        let mut t = BettiTable::new();
        for &(j, first, vals) in rows {
            for (p, &v) in vals.iter().enumerate() {
                t.set(first + p, j, v);
            }
        }
        t
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        if v == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    /// Nonzero entries `((i, j), β)` in increasing `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest homological index with a nonzero entry.
    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Largest row index with a nonzero entry (Castelnuovo–Mumford regularity).
    pub fn regularity(&self) -> usize {
        self.entries.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Total rank of `F_i`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries.iter().filter(|(k, _)| k.0 == i).map(|(_, v)| v).sum()
    }

    /// The `j`-th row as `(i, β_{i,j})` for nonzero entries.
    pub fn row(&self, j: usize) -> Vec<(usize, u64)> {
        self.entries.iter().filter(|(k, _)| k.1 == j).map(|(k, v)| (k.0, *v)).collect()
    }

    /// `Σ_i (-1)^i Σ_j β_{i,j} t^{i+j}` as coefficients by degree.
    pub fn euler_numerator(&self) -> Vec<i64> {
        let top = self.entries.keys().map(|k| k.0 + k.1).max().unwrap_or(0);
        let mut out = vec![0i64; top + 1];
        for (&(i, j), &b) in &self.entries {
            let s = if i % 2 == 0 { 1 } else { -1 };
            out[i + j] += s * b as i64;
        }
        while out.len() > 1 && out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// Property `N_{2,p}`: `β_{i,j} = 0` for all `1 ≤ i ≤ p` and `j ≥ 2`.
    pub fn satisfies_n2p(&self, p: usize) -> bool {
        !self.entries.keys().any(|&(i, j)| i >= 1 && i <= p && j >= 2)
    }

    /// The usual Betti diagram: header `0 1 2 ...`, rows labelled `j:`, blanks
    /// for zeros, right-aligned columns, no trailing spaces.
    pub fn to_grid(&self) -> String {
        let ncols = self.projective_dimension() + 1;
        let nrows = self.regularity() + 1;
        let label_w = format!("{}:", nrows - 1).len();
        let widths: Vec<usize> = (0..ncols)
            .map(|i| {
                (0..nrows)
                    .map(|j| self.get(i, j))
                    .filter(|&v| v > 0)
                    .map(|v| v.to_string().len())
                    .chain(std::iter::once(i.to_string().len()))
                    .max()
                    .unwrap()
            })
            .collect();
        let mut out = String::new();
        let mut line = " ".repeat(label_w);
        for (i, w) in widths.iter().enumerate() {
            let _ = write!(line, " {:>w$}", i, w = w);
        }
        out.push_str(line.trim_end());
        out.push('\n');
        for j in 0..nrows {
            let mut line = format!("{:<w$}", format!("{j}:"), w = label_w);
            for (i, w) in widths.iter().enumerate() {
                let v = self.get(i, j);
                let cell = if v == 0 { String::new() } else { v.to_string() };
                let _ = write!(line, " {:>w$}", cell, w = w);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    /// `i,j,beta` lines for the nonzero entries, with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,beta\n");
        for (&(i, j), &b) in &self.entries {
            let _ = writeln!(out, "{i},{j},{b}");
        }
        out
    }

    /// `beta.i.j=v` lines for the nonzero entries.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        for (&(i, j), &b) in &self.entries {
            let _ = writeln!(out, "beta.{i}.{j}={b}");
        }
        out
    }

    /// Parses the CSV form written by [`Self::to_csv`]. Blank lines and `#`
    /// comments are ignored.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut t = BettiTable::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') || line == "i,j,beta" {
                continue;
            }
            let parts: Vec<&str> = line.split(',').map(str::trim).collect();
            let bad = || AlgebraError::IdealFile(format!("bad Betti CSV line '{line}'"));
            if parts.len() != 3 {
                return Err(bad());
            }
            let i = parts[0].parse().map_err(|_| bad())?;
            let j = parts[1].parse().map_err(|_| bad())?;
            let b = parts[2].parse().map_err(|_| bad())?;
            t.set(i, j, b);
        }
        Ok(t)
    }

    /// Cells where the two tables differ: `(i, j, self, other)`.
    pub fn diff(&self, other: &BettiTable) -> Vec<(usize, usize, u64, u64)> {
        let keys: std::collections::BTreeSet<(usize, usize)> =
            self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.into_iter()
            .filter(|&(i, j)| self.get(i, j) != other.get(i, j))
            .map(|(i, j)| (i, j, self.get(i, j), other.get(i, j)))
            .collect()
    }
}

/// Betti table of a minimal resolution. Non-minimal input is rejected.
pub fn betti_table<F: Field>(res: &FreeResolution<F>) -> Result<BettiTable> {
    if !res.minimal || !res.has_no_unit_entries() {
        return Err(AlgebraError::NonMinimal);
    }
    let mut t = BettiTable::new();
    for (i, m) in res.modules.iter().enumerate() {
        for &d in &m.twists {
            let j = d - i as i32;
            if j < 0 {
                return Err(AlgebraError::Degenerate(format!("F_{i} has a generator of degree {d}")));
            }
            t.set(i, j as usize, t.get(i, j as usize) + 1);
        }
    }
    Ok(t)
}

/// Betti numbers of any (possibly non-minimal) graded free resolution from
/// the ranks of the scalar parts of its differentials:
/// `β_{i,d} = n_{i,d} − rank(d_i)_d − rank(d_{i+1})_d`.
pub fn betti_from_ranks<F: Field>(res: &FreeResolution<F>) -> BettiTable {
    let field = res.ring.field();
    let mut t = BettiTable::new();
    let rank_at = |map: Option<&super::complex::GradedMatrix<F>>, d: i32| -> usize {
        match map {
            None => 0,
            Some(m) => {
                let block: ExactMatrix<F> = m.scalar_block(field, d);
                if block.nrows() == 0 || block.ncols() == 0 {
                    0
                } else {
                    block.rank()
                }
            }
        }
    };
    for (i, m) in res.modules.iter().enumerate() {
        let mut degrees: Vec<i32> = m.twists.clone();
        degrees.sort_unstable();
        degrees.dedup();
        for d in degrees {
            let n = m.count(d);
            let left = if i == 0 { 0 } else { rank_at(res.maps.get(i - 1), d) };
            let right = rank_at(res.maps.get(i), d);
            let b = n - left - right;
            if b > 0 {
                t.set(i, (d - i as i32) as usize, b as u64);
            }
        }
    }
    t
}
