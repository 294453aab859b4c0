use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use super::field::Field;
use super::monomial::{Monomial, MonomialOrder, SortKey, MAX_VARS};
use crate::error::{AlgebraError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term<F: Field> {
    pub coeff: F::Elem,
    pub mon: Monomial,
}

/// A polynomial as a list of terms, strictly descending in its ring's order,
/// with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<F: Field> {
    terms: Vec<Term<F>>,
}

impl<F: Field> Default for Polynomial<F> {
    fn default() -> Self {
        Polynomial::zero()
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    /// Wraps terms that are already normalized for the intended ring.
    pub(crate) fn from_sorted_terms(terms: Vec<Term<F>>) -> Self {
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<F>> {
        self.terms
    }

    pub fn leading_term(&self) -> Option<&Term<F>> {
        self.terms.first()
    }

    /// Leading monomial. Panics on zero.
    pub fn lm(&self) -> Monomial {
        self.terms[0].mon
    }

    /// Leading coefficient. Panics on zero.
    pub fn lc(&self) -> &F::Elem {
        &self.terms[0].coeff
    }

    /// Largest unweighted total degree of a term.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mon.total_degree()).max()
    }

    /// Coefficient of the constant term, if any.
    pub fn constant_coeff(&self) -> Option<&F::Elem> {
        self.terms.last().filter(|t| t.mon.is_one()).map(|t| &t.coeff)
    }

    pub fn support_len(&self) -> usize {
        self.terms.iter().map(|t| t.mon.support_len()).max().unwrap_or(0)
    }
}

/// A polynomial ring `k[x_0..x_{n-1}]` with a monomial order and optional
/// positive integer weights on the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring<F: Field> {
    field: F,
    nvars: usize,
    order: MonomialOrder,
    weights: Option<Vec<u32>>,
}

impl<F: Field> Ring<F> {
    pub fn new(field: F, nvars: usize) -> Result<Self> {
        Self::with_order(field, nvars, MonomialOrder::Grevlex)
    }

    pub fn with_order(field: F, nvars: usize, order: MonomialOrder) -> Result<Self> {
        if nvars > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(nvars));
        }
        Ok(Ring { field, nvars, order, weights: None })
    }

    /// Ring graded by `weights` (all positive). Unit weights are stored as the
    /// standard grading.
    pub fn weighted(field: F, weights: Vec<u32>, order: MonomialOrder) -> Result<Self> {
        if weights.len() > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(weights.len()));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(AlgebraError::OutOfRange("variable weights must be positive".into()));
        }
        let nvars = weights.len();
        let weights = if weights.iter().all(|&w| w == 1) { None } else { Some(weights) };
        Ok(Ring { field, nvars, order, weights })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights.as_ref().map_or(1, |w| w[i])
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.is_none()
    }

    /// Same variables and grading, different order.
    pub fn reordered(&self, order: MonomialOrder) -> Ring<F> {
        Ring { order, ..self.clone() }
    }

    /// Standard-graded ring with a different number of variables.
    pub fn sibling(&self, nvars: usize) -> Result<Ring<F>> {
        Ring::with_order(self.field.clone(), nvars, self.order)
    }

    #[inline]
    pub fn degree_of(&self, m: &Monomial) -> u32 {
        match &self.weights {
            None => m.total_degree(),
            Some(w) => m.weighted_degree(w),
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, self.nvars, self.weights.as_deref())
    }

    #[inline]
    pub fn key(&self, m: &Monomial) -> SortKey {
        self.order.key(m, self.nvars, self.weights.as_deref())
    }

    /// Checks that every monomial lives in this ring.
    pub fn owns(&self, f: &Polynomial<F>) -> bool {
        f.support_len() <= self.nvars
    }

    pub fn check_owns(&self, f: &Polynomial<F>) -> Result<()> {
        if self.owns(f) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch(format!(
                "polynomial uses {} variables, ring has {}",
                f.support_len(),
                self.nvars
            )))
        }
    }

    pub fn var(&self, i: usize) -> Polynomial<F> {
        assert!(i < self.nvars);
        Polynomial::from_sorted_terms(vec![Term { coeff: self.field.one(), mon: Monomial::var(i) }])
    }

    pub fn constant(&self, c: F::Elem) -> Polynomial<F> {
        if self.field.is_zero(&c) {
            Polynomial::zero()
        } else {
            Polynomial::from_sorted_terms(vec![Term { coeff: c, mon: Monomial::one() }])
        }
    }

    pub fn one(&self) -> Polynomial<F> {
        self.constant(self.field.one())
    }

    pub fn monomial(&self, c: F::Elem, mon: Monomial) -> Polynomial<F> {
        if self.field.is_zero(&c) {
            Polynomial::zero()
        } else {
            Polynomial::from_sorted_terms(vec![Term { coeff: c, mon }])
        }
    }

    /// Sorts, merges equal monomials and drops zero coefficients.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (F::Elem, Monomial)>) -> Polynomial<F> {
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (c, m) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = self.field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term<F>> = acc
            .into_iter()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(mon, coeff)| Term { coeff, mon })
            .collect();
        terms.sort_by(|a, b| self.cmp(&b.mon, &a.mon));
        Polynomial::from_sorted_terms(terms)
    }

    /// Re-sorts a polynomial produced under another order of the same variables.
    pub fn convert(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let mut terms = f.terms.clone();
        terms.sort_by(|a, b| self.cmp(&b.mon, &a.mon));
        Polynomial::from_sorted_terms(terms)
    }

    /// Largest weighted degree of a term.
    pub fn degree(&self, f: &Polynomial<F>) -> Option<u32> {
        f.terms.iter().map(|t| self.degree_of(&t.mon)).max()
    }

    pub fn is_homogeneous(&self, f: &Polynomial<F>) -> bool {
        match f.terms.first() {
            None => true,
            Some(t) => {
                let d = self.degree_of(&t.mon);
                f.terms.iter().all(|s| self.degree_of(&s.mon) == d)
            }
        }
    }

    pub fn neg(&self, f: &Polynomial<F>) -> Polynomial<F> {
        Polynomial::from_sorted_terms(
            f.terms.iter().map(|t| Term { coeff: self.field.neg(&t.coeff), mon: t.mon }).collect(),
        )
    }

    pub fn scale(&self, f: &Polynomial<F>, c: &F::Elem) -> Polynomial<F> {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial::from_sorted_terms(
            f.terms.iter().map(|t| Term { coeff: self.field.mul(&t.coeff, c), mon: t.mon }).collect(),
        )
    }

    /// `c * m * f`
    pub fn mul_term(&self, f: &Polynomial<F>, c: &F::Elem, m: &Monomial) -> Polynomial<F> {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial::from_sorted_terms(
            f.terms
                .iter()
                .map(|t| Term { coeff: self.field.mul(&t.coeff, c), mon: t.mon.mul(m) })
                .collect(),
        )
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, f: &Polynomial<F>) -> Polynomial<F> {
        match f.terms.first() {
            None => Polynomial::zero(),
            Some(t) if self.field.is_one(&t.coeff) => f.clone(),
            Some(t) => self.scale(f, &self.field.inv(&t.coeff)),
        }
    }

    pub fn add(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
        self.add_scaled(f, &self.field.one(), &Monomial::one(), g)
    }

    pub fn sub(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
        self.add_scaled(f, &self.field.neg(&self.field.one()), &Monomial::one(), g)
    }

    /// `f + c * m * g` by a single merge.
    pub fn add_scaled(
        &self,
        f: &Polynomial<F>,
        c: &F::Elem,
        m: &Monomial,
        g: &Polynomial<F>,
    ) -> Polynomial<F> {
        Polynomial::from_sorted_terms(self.merge_terms(&f.terms, c, m, &g.terms))
    }

    /// `a + c * m * b` on sorted term slices.
    pub fn merge_terms(
        &self,
        a: &[Term<F>],
        c: &F::Elem,
        m: &Monomial,
        b: &[Term<F>],
    ) -> Vec<Term<F>> {
        let k = &self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut i = 0;
        let mut j = 0;
        while i < a.len() || j < b.len() {
            if j == b.len() {
                out.extend_from_slice(&a[i..]);
                break;
            }
            let gm = b[j].mon.mul(m);
            if i == a.len() {
                out.push(Term { coeff: k.mul(c, &b[j].coeff), mon: gm });
                j += 1;
                continue;
            }
            match self.cmp(&a[i].mon, &gm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term { coeff: k.mul(c, &b[j].coeff), mon: gm });
                    j += 1;
                }
                Ordering::Equal => {
                    let s = k.add(&a[i].coeff, &k.mul(c, &b[j].coeff));
                    if !k.is_zero(&s) {
                        out.push(Term { coeff: s, mon: gm });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    pub fn mul(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
        if f.is_zero() || g.is_zero() {
            return Polynomial::zero();
        }
        if f.len() == 1 {
            return self.mul_term(g, &f.terms[0].coeff, &f.terms[0].mon);
        }
        if g.len() == 1 {
            return self.mul_term(f, &g.terms[0].coeff, &g.terms[0].mon);
        }
        let k = &self.field;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(f.len() * g.len());
        for s in &f.terms {
            for t in &g.terms {
                let m = s.mon.mul(&t.mon);
                let c = k.mul(&s.coeff, &t.coeff);
                match acc.get_mut(&m) {
                    Some(v) => *v = k.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        self.from_terms(acc.into_iter().map(|(m, c)| (c, m)))
    }

    pub fn pow(&self, f: &Polynomial<F>, k: u32) -> Polynomial<F> {
        let mut result = self.one();
        let mut base = f.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Evaluates at a point of `k^n`.
    pub fn evaluate(&self, f: &Polynomial<F>, point: &[F::Elem]) -> F::Elem {
        let k = &self.field;
        let mut total = k.zero();
        for t in &f.terms {
            let mut v = t.coeff.clone();
            for (i, x) in point.iter().enumerate().take(self.nvars) {
                for _ in 0..t.mon.exponent(i) {
                    v = k.mul(&v, x);
                }
            }
            total = k.add(&total, &v);
        }
        total
    }

    /// Replaces `x_i` by `images[i]` (polynomials of `target`).
    pub fn substitute(
        &self,
        f: &Polynomial<F>,
        images: &[Polynomial<F>],
        target: &Ring<F>,
    ) -> Result<Polynomial<F>> {
        if images.len() != self.nvars {
            return Err(AlgebraError::ImageCount { expected: self.nvars, got: images.len() });
        }
        // powers cache per variable
        let mut powers: Vec<Vec<Polynomial<F>>> = vec![vec![target.one()]; self.nvars];
        let mut result = Polynomial::zero();
        for t in &f.terms {
            let mut prod = target.constant(t.coeff.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = t.mon.exponent(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = target.mul(pw.last().unwrap(), &images[i]);
                    pw.push(next);
                }
                prod = target.mul(&prod, &pw[e]);
            }
            result = target.add(&result, &prod);
        }
        Ok(result)
    }

    /// Linear change of variables: each image must be a homogeneous linear form.
    pub fn substitute_linear(
        &self,
        f: &Polynomial<F>,
        images: &[Polynomial<F>],
        target: &Ring<F>,
    ) -> Result<Polynomial<F>> {
        if images.len() != self.nvars {
            return Err(AlgebraError::ImageCount { expected: self.nvars, got: images.len() });
        }
        for g in images {
            if g.terms.iter().any(|t| t.mon.total_degree() != 1) {
                return Err(AlgebraError::Inhomogeneous(format!(
                    "image {} is not a linear form",
                    self.format(g)
                )));
            }
        }
        self.substitute(f, images, target)
    }

    /// Text form accepted by the parser, e.g. `x0*x2 - x1^2`.
    pub fn format(&self, f: &Polynomial<F>) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, t) in f.terms.iter().enumerate() {
            let c = self.field.format(&t.coeff);
            let (neg, mag) = match c.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, c),
            };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if t.mon.is_one() {
                s.push_str(&mag);
            } else {
                if mag != "1" {
                    s.push_str(&mag);
                    s.push('*');
                }
                s.push_str(&t.mon.to_text());
            }
        }
        s
    }

    pub fn display<'a>(&'a self, f: &'a Polynomial<F>) -> impl fmt::Display + 'a {
        struct D<'a, F: Field>(&'a Ring<F>, &'a Polynomial<F>);
        impl<F: Field> fmt::Display for D<'_, F> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format(self.1))
            }
        }
        D(self, f)
    }
}

/// Which arithmetic operation [`poly_arith`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    /// `g` must be a constant; `f` is multiplied by it.
    Scale,
}

/// Checked arithmetic entry point: both operands must belong to `ring`.
pub fn poly_arith<F: Field>(
    ring: &Ring<F>,
    op: ArithOp,
    f: &Polynomial<F>,
    g: &Polynomial<F>,
) -> Result<Polynomial<F>> {
    ring.check_owns(f)?;
    ring.check_owns(g)?;
    match op {
        ArithOp::Add => Ok(ring.add(f, g)),
        ArithOp::Mul => Ok(ring.mul(f, g)),
        ArithOp::Scale => {
            if g.is_zero() {
                return Ok(Polynomial::zero());
            }
            match g.constant_coeff() {
                Some(c) if g.len() == 1 => Ok(ring.scale(f, c)),
                _ => Err(AlgebraError::OutOfRange("scale factor must be a constant".into())),
            }
        }
    }
}
