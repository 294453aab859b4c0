//! Exact coefficient fields.
//!
//! Two fields are supported: the rationals (arbitrary precision) and prime
//! fields `F_p` with `p` below `2^31`. Algorithms are generic over [`Field`]
//! and a field value carries whatever runtime data it needs (the modulus).

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::AlgebraError;

/// Default modulus for prime-field computations.
pub const DEFAULT_PRIME: u32 = 32003;

/// Bound on the size of random rational coordinates, `{-q..q}`.
pub const RATIONAL_SAMPLE_BOUND: i64 = 100;

pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of `num/den`; `None` when the denominator vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;
    /// Uniform sample: the full field for `F_p`, `{-q..q}` for the rationals.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;
    fn spec(&self) -> FieldSpec;

    /// `a - b*c`
    fn sub_mul(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(b, c))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn is_minus_one(&self, a: &Self::Elem) -> bool {
        self.is_one(&self.neg(a))
    }
}

/// Runtime description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl FieldSpec {
    /// Validates a prime modulus.
    pub fn prime(p: u64) -> Result<FieldSpec, AlgebraError> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(AlgebraError::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    /// Header notation used by the ideal file format: `QQ` or `Fp:p`.
    pub fn header(&self) -> String {
        match self {
            FieldSpec::Rationals => "QQ".to_string(),
            FieldSpec::Prime(p) => format!("Fp:{p}"),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "qq"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = AlgebraError;

    /// Accepts `qq`, `QQ`, `fp:P`, `Fp:P` and a bare prime.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("qq") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = if t.len() > 3 && t[..3].eq_ignore_ascii_case("fp:") { &t[3..] } else { t };
        let p: u64 = digits
            .parse()
            .map_err(|_| AlgebraError::InvalidField(format!("unrecognized field '{s}'")))?;
        FieldSpec::prime(p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field `Z/p`, elements stored as canonical residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, AlgebraError> {
        FieldSpec::prime(p as u64)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a + *b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if *a >= *b {
            *a - *b
        } else {
            *a + self.p - *b
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn sub_mul(&self, a: &u32, b: &u32, c: &u32) -> u32 {
        let p = self.p as u64;
        ((*a as u64 + p * p - *b as u64 * *c as u64) % p) as u32
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, *a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        t.rem_euclid(self.p as i64) as u32
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u32> {
        let p = BigInt::from(self.p);
        let n = num.mod_floor(&p).to_u32().unwrap();
        let d = den.mod_floor(&p).to_u32().unwrap();
        if d == 0 {
            None
        } else {
            Some(self.mul(&n, &self.inv(&d)))
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn format(&self, a: &u32) -> String {
        // symmetric representative
        if *a > self.p / 2 {
            format!("-{}", self.p - *a)
        } else {
            a.to_string()
        }
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
}

/// The rationals with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in QQ");
        a.recip()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn is_minus_one(&self, a: &BigRational) -> bool {
        a.is_negative() && a.denom().is_one() && a.numer() == &BigInt::from(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(32003).unwrap();
        for a in [1u32, 2, 3, 17, 32002, 12345] {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.sub_mul(&5, &3, &4), f.from_i64(5 - 12));
    }

    #[test]
    fn characteristic_kills_p() {
        let f = PrimeField::new(5).unwrap();
        assert!(f.is_zero(&f.from_i64(5)));
        assert_eq!(f.from_ratio(&BigInt::from(1), &BigInt::from(5)), None);
        assert_eq!(f.from_ratio(&BigInt::from(3), &BigInt::from(2)), Some(4));
    }

    #[test]
    fn parse_field_specs() {
        assert_eq!("qq".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("fp:7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert_eq!("Fp:32003".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(32003));
        assert!("fp:8".parse::<FieldSpec>().is_err());
        assert!("reals".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn rational_sums_match_integer_oracle() {
        // a/b + c/d == (ad + cb)/(bd), with the right side built from bare BigInts.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let q = Rationals;
        for _ in 0..1000 {
            let a: i64 = rng.gen_range(-1_000_000..1_000_000);
            let c: i64 = rng.gen_range(-1_000_000..1_000_000);
            let b: i64 = rng.gen_range(1..1_000_000);
            let d: i64 = rng.gen_range(1..1_000_000);
            let lhs = q.add(
                &q.from_ratio(&a.into(), &b.into()).unwrap(),
                &q.from_ratio(&c.into(), &d.into()).unwrap(),
            );
            let num = BigInt::from(a) * BigInt::from(d) + BigInt::from(c) * BigInt::from(b);
            let den = BigInt::from(b) * BigInt::from(d);
            // cross-multiplication avoids relying on the library's normalization
            assert!((lhs.numer() * &den - &num * lhs.denom()).is_zero());
        }
    }
}
