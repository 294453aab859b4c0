//! Ideals of the varieties used in the bound checks: rational normal scrolls,
//! Veronese re-embeddings of plane curves, monomial curves, projections,
//! point sets, hyperplane sections and divisors on two-dimensional scrolls.

use log::warn;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::groebner::{eliminate, intersect, kernel_of_ring_map, Ideal, KernelOptions};
use crate::polycore::{ExactMatrix, Field, Monomial, MonomialOrder, Polynomial, Ring};
use crate::resolution::hilbert_series;

mod recipe;
pub use recipe::{Recipe, Stage};

/// `S(a_1, ..., a_k)` with `a_1 <= ... <= a_k`, spanning `P^N` with
/// `N = Σ a_i + k - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrollSpec {
    a: Vec<u32>,
}

impl ScrollSpec {
    /// The entries are sorted; at least one must be positive.
    pub fn new(mut a: Vec<u32>) -> Result<Self> {
        if a.iter().all(|&x| x == 0) {
            return Err(AlgebraError::InvalidConstruction("a scroll needs some a_i > 0".into()));
        }
        a.sort_unstable();
        Ok(ScrollSpec { a })
    }

    pub fn parts(&self) -> &[u32] {
        &self.a
    }

    pub fn ambient_dim(&self) -> usize {
        self.a.iter().sum::<u32>() as usize + self.a.len() - 1
    }

    pub fn degree(&self) -> u32 {
        self.a.iter().sum()
    }

    pub fn dimension(&self) -> usize {
        self.a.len()
    }

    pub fn codimension(&self) -> usize {
        self.ambient_dim() - self.a.len()
    }
}

/// 2×2 minors of the catalecticant block matrix: the block for `a_i` has
/// columns `(x_j, x_{j+1})` for its `a_i + 1` consecutive variables.
pub fn rational_normal_scroll<F: Field>(field: &F, spec: &ScrollSpec) -> Result<Ideal<F>> {
    let ring = Ring::new(field.clone(), spec.ambient_dim() + 1)?;
    let mut cols: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for &a in &spec.a {
        for j in 0..a as usize {
            cols.push((start + j, start + j + 1));
        }
        start += a as usize + 1;
    }
    let k = ring.field();
    let mut gens = Vec::new();
    for (p, &(t1, b1)) in cols.iter().enumerate() {
        for &(t2, b2) in &cols[p + 1..] {
            let m1 = Monomial::var(t1).mul(&Monomial::var(b2));
            let m2 = Monomial::var(t2).mul(&Monomial::var(b1));
            gens.push(ring.from_terms([(k.one(), m1), (k.neg(&k.one()), m2)]));
        }
    }
    Ideal::new(ring, gens)
}

/// Degree-`d` monomials in `n` variables, lex-descending (`x0^d` first).
pub fn monomials_lex_desc(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur).unwrap());
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(0, d, &mut vec![0; n], &mut out);
    }
    out
}

/// Ideal of `ν_d(V(f))` in `P^{C(d+2,2)-1}`, coordinates indexed by the
/// degree-`d` monomials of the plane in lex-descending order. `f = 0` gives
/// the Veronese surface.
pub fn veronese_embed_plane_curve<F: Field>(
    plane: &Ring<F>,
    f: &Polynomial<F>,
    d: u32,
) -> Result<Ideal<F>> {
    if plane.nvars() != 3 || !plane.is_standard_graded() {
        return Err(AlgebraError::RingMismatch("expected the plane ring k[x0,x1,x2]".into()));
    }
    if d < 2 {
        return Err(AlgebraError::OutOfRange(format!("Veronese degree {d} must be at least 2")));
    }
    plane.check_owns(f)?;
    if !plane.is_homogeneous(f) {
        return Err(AlgebraError::Inhomogeneous(plane.format(f)));
    }
    let k = plane.field();
    let images: Vec<Polynomial<F>> =
        monomials_lex_desc(3, d).into_iter().map(|m| plane.monomial(k.one(), m)).collect();
    let ambient = Ring::new(k.clone(), images.len())?;
    let relations = if f.is_zero() { Vec::new() } else { vec![f.clone()] };
    kernel_of_ring_map(&ambient, plane, &images, &KernelOptions { relations, degree_bound: None })
        .map(|i| i.minimal_generators())
}

/// Ideal of the image of `[s^{e_0}, s^{e_1} t^{e_0-e_1}, ..., t^{e_0}]`.
pub fn monomial_curve<F: Field>(field: &F, exponents: &[u32]) -> Result<Ideal<F>> {
    if exponents.len() < 2 {
        return Err(AlgebraError::InvalidConstruction("a monomial curve needs at least two exponents".into()));
    }
    if exponents.windows(2).any(|w| w[0] <= w[1]) {
        return Err(AlgebraError::InvalidConstruction(
            "exponents must be strictly decreasing (no repeats)".into(),
        ));
    }
    if *exponents.last().unwrap() != 0 {
        return Err(AlgebraError::InvalidConstruction("the last exponent must be 0".into()));
    }
    let d = exponents[0];
    let st = Ring::new(field.clone(), 2)?;
    let images: Vec<Polynomial<F>> = exponents
        .iter()
        .map(|&a| Ok(st.monomial(field.one(), Monomial::from_exponents(&[a, d - a])?)))
        .collect::<Result<_>>()?;
    let ambient = Ring::new(field.clone(), exponents.len())?;
    kernel_of_ring_map(&ambient, &st, &images, &KernelOptions::default()).map(|i| i.minimal_generators())
}

/// Points of `P^r` with the seed they were drawn with, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration<F: Field> {
    pub r: usize,
    pub points: Vec<Vec<F::Elem>>,
    pub seed: Option<u64>,
}

impl<F: Field> PointConfiguration<F> {
    pub fn new(r: usize, points: Vec<Vec<F::Elem>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != r + 1) {
            return Err(AlgebraError::OutOfRange(format!("point with {} coordinates in P^{r}", p.len())));
        }
        Ok(PointConfiguration { r, points, seed: None })
    }

    /// Rank of the matrix whose rows are the points.
    pub fn rank(&self, field: &F) -> usize {
        if self.points.is_empty() {
            return 0;
        }
        ExactMatrix::from_dense(field.clone(), &self.points).rank()
    }

    /// No point is zero and no two points are proportional.
    pub fn pairwise_distinct(&self, field: &F) -> bool {
        let n = self.points.len();
        (0..n).all(|i| {
            self.points[i].iter().any(|c| !field.is_zero(c))
                && (i + 1..n).all(|j| {
                    ExactMatrix::from_dense(field.clone(), &[self.points[i].clone(), self.points[j].clone()]).rank()
                        == 2
                })
        })
    }
}

/// Ideal of the closure of the projection of `V(I)` from the span of the
/// `c` points of `center`. Coordinates are changed so that the linear forms
/// vanishing on the center become the last variables, then the first `c`
/// variables are eliminated.
pub fn project_from_span<F: Field>(ideal: &Ideal<F>, center: &PointConfiguration<F>) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let k = ring.field();
    let n = ring.nvars();
    if !ring.is_standard_graded() || center.r + 1 != n {
        return Err(AlgebraError::RingMismatch("center and ideal live in different spaces".into()));
    }
    let c = center.points.len();
    if c == 0 {
        return Ok(ideal.clone());
    }
    let target_dim = n as i64 - c as i64 - 1;
    if target_dim < 2 {
        return Err(AlgebraError::AmbientTooSmall(target_dim));
    }
    let ech = ExactMatrix::from_dense(k.clone(), &center.points).row_reduce();
    if ech.rank < c {
        return Err(AlgebraError::Degenerate("the projection center points are linearly dependent".into()));
    }
    // new coordinates: z_j = y_{pivot_j} for j < c, then a basis of the
    // linear forms vanishing on the center
    let mut rows: Vec<Vec<F::Elem>> = ech
        .pivots
        .iter()
        .map(|&p| (0..n).map(|j| if j == p { k.one() } else { k.zero() }).collect())
        .collect();
    for free in (0..n).filter(|j| !ech.pivots.contains(j)) {
        let mut v = vec![k.zero(); n];
        v[free] = k.one();
        for (r, &p) in ech.pivots.iter().enumerate() {
            v[p] = k.neg(&ech.matrix.get(r, free));
        }
        rows.push(v);
    }
    // y = A^{-1} z, from the reduced form of [A | 1]
    let aug: Vec<Vec<F::Elem>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..n).map(|j| if j == i { k.one() } else { k.zero() }));
            v
        })
        .collect();
    let inv = ExactMatrix::from_dense(k.clone(), &aug).row_reduce();
    debug_assert_eq!(inv.pivots, (0..n).collect::<Vec<_>>());
    let z = Ring::new(k.clone(), n)?;
    let subs: Vec<Polynomial<F>> = (0..n)
        .map(|j| z.from_terms((0..n).map(|col| (inv.matrix.get(j, n + col), Monomial::var(col)))))
        .collect();
    let gens = ideal
        .generators()
        .iter()
        .map(|g| ring.substitute_linear(g, &subs, &z))
        .collect::<Result<Vec<_>>>()?;
    let image = eliminate(&Ideal::new(z, gens)?, c)?;
    Ok(image.minimal_generators())
}

/// Ideal of a single point.
pub fn point_ideal<F: Field>(ring: &Ring<F>, point: &[F::Elem]) -> Result<Ideal<F>> {
    let k = ring.field();
    let Some(piv) = point.iter().position(|c| !k.is_zero(c)) else {
        return Err(AlgebraError::Degenerate("the zero vector is not a point".into()));
    };
    let gens = (0..ring.nvars())
        .filter(|&j| j != piv)
        .map(|j| {
            ring.from_terms([
                (point[piv].clone(), Monomial::var(j)),
                (k.neg(&point[j]), Monomial::var(piv)),
            ])
        })
        .collect();
    Ideal::new(ring.clone(), gens)
}

/// Ideal of a finite point set, by iterated intersection.
pub fn points_ideal<F: Field>(ring: &Ring<F>, points: &[Vec<F::Elem>]) -> Result<Ideal<F>> {
    let mut acc: Option<Ideal<F>> = None;
    for p in points {
        let i = point_ideal(ring, p)?;
        acc = Some(match acc {
            None => i,
            Some(a) => intersect(&a, &i)?,
        });
    }
    acc.map(|i| i.minimal_generators()).ok_or(AlgebraError::ZeroInput)
}

fn sample_points<F: Field>(field: &F, r: usize, d: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<F::Elem>> {
    (0..d).map(|_| (0..=r).map(|_| field.random(rng)).collect()).collect()
}

/// `d` seeded random points of `P^r` and their ideal. The points are checked
/// to be distinct and spanning; on failure the draw is repeated once with a
/// derived seed and a warning.
pub fn random_points<F: Field>(
    field: &F,
    r: usize,
    d: usize,
    seed: u64,
) -> Result<(PointConfiguration<F>, Ideal<F>)> {
    if r < 2 || d == 0 {
        return Err(AlgebraError::OutOfRange(format!("need r >= 2 and d >= 1, got r={r}, d={d}")));
    }
    if d <= r {
        return Err(AlgebraError::Degenerate(format!("{d} points lie on a hyperplane of P^{r}")));
    }
    sample_with_retry(field, r, seed, |rng| sample_points(field, r, d, rng))
}

/// `d` seeded random points on the rational normal curve of `P^r`.
pub fn random_points_on_rational_normal_curve<F: Field>(
    field: &F,
    r: usize,
    d: usize,
    seed: u64,
) -> Result<(PointConfiguration<F>, Ideal<F>)> {
    if r < 2 || d <= r {
        return Err(AlgebraError::OutOfRange(format!("need r >= 2 and d > r, got r={r}, d={d}")));
    }
    sample_with_retry(field, r, seed, |rng| {
        (0..d)
            .map(|_| {
                let (s, t) = (field.random(rng), field.random(rng));
                (0..=r)
                    .map(|i| {
                        let mut v = field.one();
                        for _ in 0..r - i {
                            v = field.mul(&v, &s);
                        }
                        for _ in 0..i {
                            v = field.mul(&v, &t);
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    })
}

fn sample_with_retry<F: Field>(
    field: &F,
    r: usize,
    seed: u64,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> Vec<Vec<F::Elem>>,
) -> Result<(PointConfiguration<F>, Ideal<F>)> {
    let ring = Ring::new(field.clone(), r + 1)?;
    for (attempt, s) in [seed, reseed(seed)].into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let points = draw(&mut rng);
        let conf = PointConfiguration { r, points, seed: Some(s) };
        if conf.pairwise_distinct(field) && conf.rank(field) == r + 1 {
            let ideal = points_ideal(&ring, &conf.points)?;
            return Ok((conf, ideal));
        }
        if attempt == 0 {
            warn!("seed {seed} gave degenerate points; retrying with seed {}", reseed(seed));
        }
    }
    Err(AlgebraError::Degenerate(format!("seed {seed} and its retry both gave degenerate points")))
}

fn reseed(seed: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1)
}

/// Section by `count` seeded random hyperplanes: the last `count` variables
/// are replaced by random linear forms in the others.
pub fn hyperplane_section<F: Field>(ideal: &Ideal<F>, count: usize, seed: u64) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let k = ring.field();
    let n = ring.nvars();
    let krull = hilbert_series(ideal)?.krull_dimension().unwrap_or(0);
    if count > krull {
        return Err(AlgebraError::OutOfRange(format!(
            "cannot cut a variety of projective dimension {} by {count} hyperplanes",
            krull as i64 - 1
        )));
    }
    if count >= n {
        return Err(AlgebraError::OutOfRange(format!("{count} hyperplanes in P^{}", n - 1)));
    }
    let m = n - count;
    let target = Ring::new(k.clone(), m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subs: Vec<Polynomial<F>> = (0..n)
        .map(|i| {
            if i < m {
                target.var(i)
            } else {
                target.from_terms((0..m).map(|j| (k.random(&mut rng), Monomial::var(j))))
            }
        })
        .collect();
    let gens = ideal
        .generators()
        .iter()
        .map(|g| ring.substitute_linear(g, &subs, &target))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(target, gens)?.minimal_generators())
}

/// A seeded random curve of class `2H + beta·F` on the smooth scroll
/// `S(a, b)`, `1 <= a <= b`, of degree `2(a+b) + beta` in `P^{a+b+1}`.
///
/// The curve is cut on the Hirzebruch surface by a random form in the Cox
/// ring `k[s, t, u, v]` (weights `1, 1, b-a+1, 1`) of `(u,v)`-degree 2 and
/// weight `2(b+1) + beta`, and mapped by the scroll parametrization
/// `s^i t^{a-i} u`, `s^j t^{b-j} v`.
pub fn scroll_divisor<F: Field>(field: &F, a: u32, b: u32, beta: i32, seed: u64) -> Result<Ideal<F>> {
    if a == 0 {
        return Err(AlgebraError::Unsupported("divisors on the singular scroll S(0, b)".into()));
    }
    if a > b {
        return Err(AlgebraError::OutOfRange(format!("need a <= b, got S({a},{b})")));
    }
    let (a_, b_) = (a as i32, b as i32);
    if 2 * a_ + beta < 0 {
        return Err(AlgebraError::InvalidConstruction(format!(
            "class 2H{beta:+}F contains the directrix as a fixed component"
        )));
    }
    if 2 * (a_ + b_) + beta < 1 {
        return Err(AlgebraError::InvalidConstruction(format!("class 2H{beta:+}F is empty")));
    }
    let cox = Ring::weighted(field.clone(), vec![1, 1, b - a + 1, 1], MonomialOrder::Grevlex)?;
    let k = cox.field();
    let mon = |s: u32, t: u32, u: u32, v: u32| Monomial::from_exponents(&[s, t, u, v]);
    let mut images = Vec::new();
    for i in (0..=a).rev() {
        images.push(cox.monomial(k.one(), mon(i, a - i, 1, 0)?));
    }
    for j in (0..=b).rev() {
        images.push(cox.monomial(k.one(), mon(j, b - j, 0, 1)?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    for (uu, vv, st) in [(2, 0, 2 * a_ + beta), (1, 1, a_ + b_ + beta), (0, 2, 2 * b_ + beta)] {
        if st < 0 {
            continue;
        }
        let st = st as u32;
        for i in 0..=st {
            let mut c = k.random(&mut rng);
            if k.is_zero(&c) {
                c = k.one();
            }
            terms.push((c, mon(i, st - i, uu, vv)?));
        }
    }
    let form = cox.from_terms(terms);
    let ambient = Ring::new(field.clone(), (a + b + 2) as usize)?;
    let ideal = kernel_of_ring_map(&ambient, &cox, &images, &KernelOptions { relations: vec![form], degree_bound: None })?;
    Ok(ideal.minimal_generators())
}

#[cfg(test)]
mod tests;
