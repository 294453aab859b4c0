use std::cmp::Ordering;
use std::fmt;

use crate::error::{AlgebraError, Result};

/// Largest number of ring variables. Exponent vectors are stored inline.
pub const MAX_VARS: usize = 24;

/// Width of a sort key, see [`MonomialOrder::key`].
pub const KEY_LEN: usize = 32;

pub type SortKey = [u8; KEY_LEN];

/// A monomial `x_0^{a_0} ... x_{n-1}^{a_{n-1}}` with exponents below 256.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u32,
}

impl Default for Monomial {
    fn default() -> Self {
        Monomial::one()
    }
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial { exps: [0; MAX_VARS], deg: 0 }
    }

    pub fn from_exponents(e: &[u32]) -> Result<Self> {
        if e.len() > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(e.len()));
        }
        let mut m = Monomial::one();
        for (i, &a) in e.iter().enumerate() {
            if a > u8::MAX as u32 {
                return Err(AlgebraError::ExponentOverflow);
            }
            m.exps[i] = a as u8;
            m.deg += a;
        }
        Ok(m)
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::one();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn var_pow(i: usize, a: u32) -> Self {
        let mut m = Monomial::one();
        m.exps[i] = u8::try_from(a).expect("exponent overflow");
        m.deg = a;
        m
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&a| a as u32).collect()
    }

    /// Unweighted total degree.
    #[inline]
    pub fn total_degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Largest index with a nonzero exponent, plus one.
    pub fn support_len(&self) -> usize {
        self.exps.iter().rposition(|&a| a > 0).map_or(0, |i| i + 1)
    }

    /// Bit `i` set when `x_i` occurs.
    #[inline]
    pub fn mask(&self) -> u32 {
        let mut m = 0u32;
        for (i, &a) in self.exps.iter().enumerate() {
            if a > 0 {
                m |= 1 << i;
            }
        }
        m
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        for i in 0..MAX_VARS {
            let s = r.exps[i] as u16 + other.exps[i] as u16;
            assert!(s <= u8::MAX as u16, "exponent overflow");
            r.exps[i] = s as u8;
        }
        r.deg += other.deg;
        r
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.exps[i] -= other.exps[i];
        }
        r.deg -= other.deg;
        Some(r)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut r = Monomial::one();
        for i in 0..MAX_VARS {
            r.exps[i] = self.exps[i].max(other.exps[i]);
            r.deg += r.exps[i] as u32;
        }
        r
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut r = Monomial::one();
        for i in 0..MAX_VARS {
            r.exps[i] = self.exps[i].min(other.exps[i]);
            r.deg += r.exps[i] as u32;
        }
        r
    }

    #[inline]
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let mut r = Monomial::one();
        for i in 0..MAX_VARS {
            let e = self.exps[i] as u32 * k;
            r.exps[i] = u8::try_from(e).expect("exponent overflow");
        }
        r.deg = self.deg * k;
        r
    }

    /// Weighted degree; `weights` must cover every occurring variable.
    #[inline]
    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        weights.iter().zip(self.exps.iter()).map(|(&w, &a)| w * a as u32).sum()
    }

    /// Exponents of variables `from..to`, moved to start at index 0.
    pub fn slice(&self, from: usize, to: usize) -> Monomial {
        let mut r = Monomial::one();
        for i in from..to {
            r.exps[i - from] = self.exps[i];
            r.deg += self.exps[i] as u32;
        }
        r
    }

    /// Shifts all exponents `shift` places to the right.
    pub fn shifted(&self, shift: usize) -> Monomial {
        let mut r = Monomial::one();
        for i in 0..MAX_VARS - shift {
            r.exps[i + shift] = self.exps[i];
        }
        assert!(self.exps[MAX_VARS - shift..].iter().all(|&a| a == 0));
        r.deg = self.deg;
        r
    }

    pub fn without_var(&self, i: usize) -> Monomial {
        let mut r = *self;
        r.deg -= r.exps[i] as u32;
        r.exps[i] = 0;
        r
    }

    /// Removes variable `i`, shifting later variables down by one.
    pub fn drop_var(&self, i: usize) -> Monomial {
        let mut r = Monomial::one();
        let mut k = 0;
        for j in 0..MAX_VARS {
            if j != i {
                r.exps[k] = self.exps[j];
                k += 1;
            }
        }
        r.deg = self.deg - self.exps[i] as u32;
        r
    }

    /// Writes the monomial with variable names `x0, x1, ...`; `1` for the unit.
    pub fn to_text(&self) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &a) in self.exps.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(format!("x{i}")),
                _ => parts.push(format!("x{i}^{a}")),
            }
        }
        parts.join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Monomial orders on a polynomial ring.
///
/// All orders compare (weighted) degree first within their blocks, so they
/// are degree compatible when the grading is positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    /// The first `k` variables form a grevlex block that dominates a grevlex
    /// block on the remaining variables.
    BlockElimination(usize),
}

#[inline]
fn revlex(a: &Monomial, b: &Monomial, from: usize, to: usize) -> Ordering {
    for i in (from..to).rev() {
        if a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

#[inline]
fn block_degree(m: &Monomial, weights: Option<&[u32]>, from: usize, to: usize) -> u32 {
    match weights {
        None => m.exps[from..to].iter().map(|&a| a as u32).sum(),
        Some(w) => (from..to).map(|i| w[i] * m.exps[i] as u32).sum(),
    }
}

impl MonomialOrder {
    /// Compares two monomials of a ring with `nvars` variables.
    #[inline]
    pub fn cmp(
        &self,
        a: &Monomial,
        b: &Monomial,
        nvars: usize,
        weights: Option<&[u32]>,
    ) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => {
                let (da, db) = match weights {
                    None => (a.deg, b.deg),
                    Some(w) => (a.weighted_degree(w), b.weighted_degree(w)),
                };
                da.cmp(&db).then_with(|| revlex(a, b, 0, nvars))
            }
            MonomialOrder::Lex => a.exps[..nvars].cmp(&b.exps[..nvars]),
            MonomialOrder::BlockElimination(k) => {
                let k = k.min(nvars);
                block_degree(a, weights, 0, k)
                    .cmp(&block_degree(b, weights, 0, k))
                    .then_with(|| revlex(a, b, 0, k))
                    .then_with(|| {
                        block_degree(a, weights, k, nvars).cmp(&block_degree(b, weights, k, nvars))
                    })
                    .then_with(|| revlex(a, b, k, nvars))
            }
        }
    }

    /// A byte string whose lexicographic order agrees with [`Self::cmp`].
    pub fn key(&self, m: &Monomial, nvars: usize, weights: Option<&[u32]>) -> SortKey {
        let mut key = [0u8; KEY_LEN];
        let mut pos = 0;
        let push_block = |key: &mut SortKey, pos: &mut usize, from: usize, to: usize| {
            let d = block_degree(m, weights, from, to);
            let d = u16::try_from(d).expect("degree too large for sort key");
            key[*pos..*pos + 2].copy_from_slice(&d.to_be_bytes());
            *pos += 2;
            for i in (from..to).rev() {
                key[*pos] = u8::MAX - m.exps[i];
                *pos += 1;
            }
        };
        match *self {
            MonomialOrder::Grevlex => push_block(&mut key, &mut pos, 0, nvars),
            MonomialOrder::Lex => key[..nvars].copy_from_slice(&m.exps[..nvars]),
            MonomialOrder::BlockElimination(k) => {
                let k = k.min(nvars);
                push_block(&mut key, &mut pos, 0, k);
                push_block(&mut key, &mut pos, k, nvars);
            }
        }
        key
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::Grevlex;
        // x0x2 vs x1^2: grevlex puts x1^2 above x0x2 (last variable penalized)
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0]), 3, None), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[0, 2, 0]), 3, None), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0]), 3, None), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates() {
        let o = MonomialOrder::BlockElimination(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5]), 3, None), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 1, 0]), &m(&[0, 0, 1]), 3, None), Ordering::Greater);
    }

    #[test]
    fn keys_agree_with_cmp() {
        let mons = [
            m(&[0, 0, 0, 0]),
            m(&[1, 0, 0, 0]),
            m(&[0, 1, 0, 2]),
            m(&[2, 1, 0, 0]),
            m(&[0, 0, 3, 0]),
            m(&[1, 1, 1, 0]),
            m(&[0, 3, 0, 0]),
        ];
        let w = [1u32, 2, 1, 3];
        for o in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::BlockElimination(2)] {
            for wt in [None, Some(&w[..])] {
                for a in &mons {
                    for b in &mons {
                        assert_eq!(o.cmp(a, b, 4, wt), o.key(a, 4, wt).cmp(&o.key(b, 4, wt)));
                    }
                }
            }
        }
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 1, 1]);
        assert_eq!(a.lcm(&b), m(&[2, 2, 1]));
        assert_eq!(a.gcd(&b), m(&[1, 1, 0]));
        assert!(a.divides(&a.lcm(&b)));
        assert_eq!(a.lcm(&b).div(&a), Some(m(&[1, 0, 1])));
        assert_eq!(a.div(&b), None);
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 3, 1])));
    }
}
