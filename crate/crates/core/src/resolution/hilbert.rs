//! Hilbert series of `S/I` from the leading-term ideal.

use std::collections::BTreeMap;

use crate::error::{AlgebraError, Result};
use crate::groebner::Ideal;
use crate::polycore::{Field, Monomial};

/// `N(t)` with `HS(S/I) = N(t) / (1-t)^n`, and the h-vector obtained by
/// dividing out every factor `(1-t)` of `N(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: Vec<i64>,
    pub h_vector: Vec<i64>,
    /// Number of variables `n = r + 1`.
    pub nvars: usize,
}

impl HilbertSeries {
    /// Krull dimension of `S/I`; `None` for the unit ideal.
    pub fn krull_dimension(&self) -> Option<usize> {
        if self.numerator.iter().all(|&c| c == 0) {
            return None;
        }
        let factors = self.numerator.len() - self.h_vector.len();
        Some(self.nvars - factors)
    }

    /// Multiplicity, `h(1)`.
    pub fn degree(&self) -> i64 {
        self.h_vector.iter().sum()
    }

    /// Values of the Hilbert function in degrees `0..len`.
    pub fn hilbert_function(&self, len: usize) -> Vec<i64> {
        // expand N(t) * (1-t)^{-n}
        let mut coeffs: Vec<i64> = (0..len).map(|i| self.numerator.get(i).copied().unwrap_or(0)).collect();
        for _ in 0..self.nvars {
            for i in 1..len {
                coeffs[i] += coeffs[i - 1];
            }
        }
        coeffs
    }
}

/// Hilbert series of `S/I`, read off the leading monomials of the reduced
/// Gröbner basis.
pub fn hilbert_series<F: Field>(ideal: &Ideal<F>) -> Result<HilbertSeries> {
    let ring = ideal.ring();
    if !ring.is_standard_graded() {
        return Err(AlgebraError::RingMismatch("Hilbert series need a standard graded ring".into()));
    }
    let lms: Vec<Monomial> = ideal.groebner().iter().map(|g| g.lm()).collect();
    let numerator = monomial_numerator(&lms);
    let h_vector = divide_out_one_minus_t(&numerator);
    Ok(HilbertSeries { numerator, h_vector, nvars: ring.nvars() })
}

/// Numerator of the Hilbert series of `S/M` for the monomial ideal `M`.
pub fn monomial_numerator(gens: &[Monomial]) -> Vec<i64> {
    let mut memo = BTreeMap::new();
    trim(numerator_rec(minimalize(gens.to_vec()), &mut memo))
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.total_degree(), m.exponents(crate::polycore::MAX_VARS)));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|k| k.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn numerator_rec(gens: Vec<Monomial>, memo: &mut BTreeMap<Vec<Vec<u32>>, Vec<i64>>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    // pairwise coprime generators: a product of (1 - t^deg)
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        let mut out = vec![1i64];
        for m in &gens {
            out = mul(&out, &one_minus_t_pow(m.total_degree() as usize));
        }
        return out;
    }
    let key: Vec<Vec<u32>> = gens.iter().map(|m| m.exponents(crate::polycore::MAX_VARS)).collect();
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    // pivot on the variable dividing the most non-pure generators
    let mut count = [0usize; crate::polycore::MAX_VARS];
    for m in gens.iter().filter(|m| m.support_len() > 1) {
        for (i, c) in count.iter_mut().enumerate() {
            if m.exponent(i) > 0 {
                *c += 1;
            }
        }
    }
    let x = (0..count.len()).max_by_key(|&i| (count[i], std::cmp::Reverse(i))).unwrap();
    let xv = Monomial::var(x);
    // 0 -> S/(M:x)(-1) -> S/M -> S/(M+x) -> 0
    let mut plus: Vec<Monomial> = gens.iter().filter(|m| m.exponent(x) == 0).copied().collect();
    plus.push(xv);
    let colon: Vec<Monomial> =
        gens.iter().map(|m| if m.exponent(x) > 0 { m.div(&xv).unwrap() } else { *m }).collect();
    let a = numerator_rec(minimalize(plus), memo);
    let b = numerator_rec(minimalize(colon), memo);
    let mut out = a;
    let shifted: Vec<i64> = std::iter::once(0).chain(b).collect();
    add_into(&mut out, &shifted);
    let out = trim(out);
    memo.insert(key, out.clone());
    out
}

fn one_minus_t_pow(d: usize) -> Vec<i64> {
    let mut v = vec![0i64; d + 1];
    v[0] = 1;
    v[d] -= 1;
    v
}

fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_into(a: &mut Vec<i64>, b: &[i64]) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Divides by `(1 - t)` while the value at 1 vanishes.
pub fn divide_out_one_minus_t(n: &[i64]) -> Vec<i64> {
    let mut cur = trim(n.to_vec());
    if cur.iter().all(|&c| c == 0) {
        return vec![0];
    }
    while cur.iter().sum::<i64>() == 0 {
        // synthetic division by (1 - t): q_k = sum_{i<=k} c_i
        let mut q = Vec::with_capacity(cur.len() - 1);
        let mut acc = 0;
        for &c in &cur[..cur.len() - 1] {
            acc += c;
            q.push(acc);
        }
        cur = trim(q);
    }
    cur
}
