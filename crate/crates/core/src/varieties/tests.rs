use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::polycore::{parse_polynomial, PrimeField};
use crate::resolution::{betti_numbers, numeric_invariants, BettiTable, NumericInvariants};

fn k() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn table_and_invariants(i: &Ideal<PrimeField>) -> (BettiTable, NumericInvariants) {
    let t = betti_numbers(i).unwrap();
    let inv = numeric_invariants(i, &t).unwrap();
    (t, inv)
}

fn quadratic_strand(t: &BettiTable) -> Vec<u64> {
    t.row(1).into_iter().map(|(_, b)| b).collect()
}

fn extremal_quartic_table() -> BettiTable {
    BettiTable::from_rows(&[(0, 0, &[1]), (1, 1, &[7, 8, 3]), (2, 2, &[6, 8, 3])])
}

/// Every generator vanishes at the images of 25 random parameter points.
fn vanishes_on_images(ideal: &Ideal<PrimeField>, params: usize, image: impl Fn(&[u32]) -> Vec<u32>) {
    let f = k();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..25 {
        let p: Vec<u32> = (0..params).map(|_| f.random(&mut rng)).collect();
        let y = image(&p);
        for g in ideal.generators() {
            assert_eq!(ideal.ring().evaluate(g, &y), 0);
        }
    }
}

fn pow(f: &PrimeField, x: u32, e: u32) -> u32 {
    (0..e).fold(1, |acc, _| f.mul(&acc, &x))
}

#[test]
fn quadric_surface_scroll() {
    let i = rational_normal_scroll(&k(), &ScrollSpec::new(vec![1, 1]).unwrap()).unwrap();
    assert_eq!(i.generators().len(), 1);
    let want = parse_polynomial("x0*x3 - x1*x2", i.ring()).unwrap();
    assert_eq!(i.generators()[0], want);
}

#[test]
fn cubic_scroll() {
    let spec = ScrollSpec::new(vec![2, 1]).unwrap();
    assert_eq!(spec.parts(), &[1, 2]);
    let i = rational_normal_scroll(&k(), &spec).unwrap();
    let (t, inv) = table_and_invariants(&i);
    assert_eq!(i.generators().len(), 3);
    assert_eq!(quadratic_strand(&t), vec![3, 2]);
    assert_eq!((inv.dimension, inv.degree, inv.codimension), (2, 3, 2));
}

#[test]
fn scrolls_are_varieties_of_minimal_degree() {
    for a in [vec![2], vec![4], vec![1, 1], vec![1, 3], vec![2, 2], vec![0, 2, 2], vec![1, 1, 1], vec![1, 2, 3], vec![0, 0, 3]] {
        let spec = ScrollSpec::new(a.clone()).unwrap();
        let i = rational_normal_scroll(&k(), &spec).unwrap();
        assert!(i.generator_degrees().iter().all(|&d| d == 2), "{a:?}");
        let (t, inv) = table_and_invariants(&i);
        assert!(inv.is_acm, "{a:?}");
        assert_eq!(inv.regularity, 1, "{a:?}");
        assert_eq!(inv.codimension, spec.codimension(), "{a:?}");
        assert_eq!(inv.degree, u64::from(spec.degree()), "{a:?}");
        assert_eq!(inv.degree as usize, inv.codimension + 1, "{a:?}");
        let e = inv.codimension as u64;
        for (p, b) in t.row(1) {
            let p = p as u64;
            assert_eq!(b, p * binom(e + 1, p + 1), "{a:?} p={p}");
        }
    }
    let rnc = rational_normal_scroll(&k(), &ScrollSpec::new(vec![5]).unwrap()).unwrap();
    assert_eq!(betti_numbers(&rnc).unwrap().get(1, 1), 10);
    assert!(ScrollSpec::new(vec![0, 0]).is_err());
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn veronese_surface() {
    let plane = Ring::new(k(), 3).unwrap();
    let i = veronese_embed_plane_curve(&plane, &Polynomial::zero(), 2).unwrap();
    let (_, inv) = table_and_invariants(&i);
    assert_eq!(i.generator_degrees(), vec![2; 6]);
    assert_eq!((inv.degree, inv.codimension), (4, 3));
    let f = k();
    vanishes_on_images(&i, 3, |p| monomials_lex_desc(3, 2).iter().map(|m| (0..3).fold(1, |acc, j| f.mul(&acc, &pow(&f, p[j], m.exponent(j))))).collect());
}

#[test]
fn veronese_quartic_is_extremal() {
    let plane = Ring::new(k(), 3).unwrap();
    let f = parse_polynomial("x0^4 + x1^4 - x2^4", &plane).unwrap();
    let i = veronese_embed_plane_curve(&plane, &f, 2).unwrap();
    let (t, inv) = table_and_invariants(&i);
    assert_eq!(t, extremal_quartic_table());
    assert_eq!((inv.degree, inv.codimension, inv.dimension), (8, 4, 1));
    assert!(veronese_embed_plane_curve(&plane, &parse_polynomial("x0^2 + x1", &plane).unwrap(), 2).is_err());
}

#[test]
fn monomial_curves() {
    let i = monomial_curve(&k(), &[3, 2, 1, 0]).unwrap();
    assert_eq!(betti_numbers(&i).unwrap(), BettiTable::from_entries([(0, 0, 1), (1, 1, 3), (2, 1, 2)]));

    let i = monomial_curve(&k(), &[11, 10, 9, 8, 7, 5, 0]).unwrap();
    let (t, inv) = table_and_invariants(&i);
    assert_eq!(inv.degree, 11);
    assert_eq!(quadratic_strand(&t), vec![10, 16, 9]);
    let f = k();
    let e = [11u32, 10, 9, 8, 7, 5, 0];
    vanishes_on_images(&i, 2, |p| e.iter().map(|&a| f.mul(&pow(&f, p[0], a), &pow(&f, p[1], 11 - a))).collect());

    let i = monomial_curve(&k(), &[4, 3, 1, 0]).unwrap();
    let (_, inv) = table_and_invariants(&i);
    assert_eq!(inv.degree, 4);
    assert!(!inv.is_acm);

    assert!(monomial_curve(&k(), &[3, 3, 1, 0]).is_err());
    assert!(monomial_curve(&k(), &[3, 2, 1]).is_err());
}

fn rnc(d: u32) -> Ideal<PrimeField> {
    rational_normal_scroll(&k(), &ScrollSpec::new(vec![d]).unwrap()).unwrap()
}

fn coordinate_point(n: usize, i: usize) -> Vec<u32> {
    (0..n).map(|j| u32::from(j == i)).collect()
}

#[test]
fn inner_projection_of_rational_normal_curves() {
    for d in 3..=6u32 {
        let n = d as usize + 1;
        let center = PointConfiguration::new(d as usize, vec![coordinate_point(n, 0)]).unwrap();
        let image = project_from_span(&rnc(d), &center).unwrap();
        let (t, inv) = table_and_invariants(&image);
        assert_eq!(inv.degree, u64::from(d - 1), "d={d}");
        assert_eq!(inv.codimension, d as usize - 2);
        assert_eq!(t, betti_numbers(&rnc(d - 1)).unwrap());
    }
}

#[test]
fn projection_preconditions() {
    let conic = Ideal::parse(Ring::new(k(), 3).unwrap(), &["x0*x2 - x1^2"]).unwrap();
    let center = PointConfiguration::new(2, vec![vec![1, 1, 0]]).unwrap();
    assert!(matches!(project_from_span(&conic, &center), Err(AlgebraError::AmbientTooSmall(1))));
    let center = PointConfiguration::new(4, vec![vec![1, 0, 0, 0, 0], vec![2, 0, 0, 0, 0]]).unwrap();
    assert!(matches!(project_from_span(&rnc(4), &center), Err(AlgebraError::Degenerate(_))));
}

#[test]
fn seven_points_in_three_space() {
    let (conf, i) = random_points(&k(), 3, 7, 1).unwrap();
    assert_eq!(conf.points.len(), 7);
    let (t, inv) = table_and_invariants(&i);
    assert_eq!(t, BettiTable::from_rows(&[(0, 0, &[1]), (1, 1, &[3]), (2, 1, &[1, 6, 3])]));
    assert_eq!(inv.hilbert_numerator, vec![1, 0, -3, -1, 6, -3]);
    assert_eq!(inv.h_vector, vec![1, 3, 3]);
    for p in &conf.points {
        for g in i.generators() {
            assert_eq!(i.ring().evaluate(g, p), 0);
        }
    }

    let (_, i) = random_points_on_rational_normal_curve(&k(), 3, 7, 1).unwrap();
    let t = betti_numbers(&i).unwrap();
    assert_eq!(t, BettiTable::from_rows(&[(0, 0, &[1]), (1, 1, &[3, 2]), (2, 1, &[3, 6, 3])]));

    assert!(random_points(&k(), 3, 3, 1).is_err());
}

#[test]
fn general_points_satisfy_n2p() {
    let (_, i) = random_points(&k(), 4, 7, 5).unwrap();
    let t = betti_numbers(&i).unwrap();
    assert!(t.satisfies_n2p(2));
}

#[test]
fn hyperplane_sections() {
    let quadric = rational_normal_scroll(&k(), &ScrollSpec::new(vec![1, 1]).unwrap()).unwrap();
    let conic = hyperplane_section(&quadric, 1, 3).unwrap();
    assert_eq!(conic.num_vars(), 3);
    assert_eq!(conic.generator_degrees(), vec![2]);

    let cubic = rnc(3);
    let pts = hyperplane_section(&cubic, 1, 3).unwrap();
    let (_, inv) = table_and_invariants(&pts);
    assert_eq!(inv.h_vector, vec![1, 2]);
    assert_eq!((inv.dimension, inv.degree), (0, 3));

    let c = monomial_curve(&k(), &[11, 10, 9, 8, 7, 5, 0]).unwrap();
    let section = hyperplane_section(&c, 1, 11).unwrap();
    assert_eq!(betti_numbers(&section).unwrap(), betti_numbers(&c).unwrap());

    assert!(hyperplane_section(&cubic, 3, 1).is_err());
}

#[test]
fn divisors_on_scroll_surfaces() {
    let i = scroll_divisor(&k(), 2, 2, 0, 1).unwrap();
    let (t, inv) = table_and_invariants(&i);
    assert_eq!(t, extremal_quartic_table());
    assert_eq!((inv.degree, inv.codimension), (8, 4));

    let i = scroll_divisor(&k(), 2, 3, -1, 1).unwrap();
    let (t, inv) = table_and_invariants(&i);
    assert_eq!(inv.degree, 9);
    assert_eq!(t.get(4, 1), 4);

    let i = scroll_divisor(&k(), 1, 2, 1, 1).unwrap();
    let (_, inv) = table_and_invariants(&i);
    assert_eq!((inv.degree, inv.codimension), (7, 3));

    assert!(matches!(scroll_divisor(&k(), 0, 3, 0, 1), Err(AlgebraError::Unsupported(_))));
    assert!(scroll_divisor(&k(), 1, 2, -3, 1).is_err());
}

#[test]
fn recipes() {
    let r: Recipe = "S(1,2)".parse().unwrap();
    assert_eq!(r.stages, vec![Stage::Scroll(vec![1, 2])]);
    assert_eq!(r.build(&k(), 0).unwrap().generators().len(), 3);

    let m: Recipe = "M(11,10,9,8,7,5,0)".parse().unwrap();
    assert_eq!(m.build(&k(), 0).unwrap().num_vars(), 7);

    let v: Recipe = "nu(2):x0^4 + x1^4 - x2^4".parse().unwrap();
    assert_eq!(betti_numbers(&v.build(&k(), 0).unwrap()).unwrap(), extremal_quartic_table());
    assert_eq!("nu(2):0".parse::<Recipe>().unwrap().build(&k(), 0).unwrap().generators().len(), 6);

    let piped: Recipe = "S(4) | proj(1,0,0,0,0)".parse().unwrap();
    let image = piped.build(&k(), 0).unwrap();
    assert_eq!(image.num_vars(), 4);
    assert_eq!(betti_numbers(&image).unwrap(), betti_numbers(&rnc(3)).unwrap());
    assert_eq!(piped.to_string(), "S(4) | proj(1,0,0,0,0)");

    let cut: Recipe = "S(3) | cut(1, 4)".parse().unwrap();
    assert_eq!(cut.stages[1], Stage::Cut { count: 1, seed: Some(4) });
    assert_eq!(cut.build(&k(), 0).unwrap().num_vars(), 3);

    let p: Recipe = "pts(3,7)".parse().unwrap();
    assert_eq!(p.build(&k(), 1).unwrap().generators(), random_points(&k(), 3, 7, 1).unwrap().1.generators());
    assert_eq!("rncpts(3,7,2)".parse::<Recipe>().unwrap().stages[0], Stage::CurvePoints { r: 3, d: 7, seed: Some(2) });
    assert_eq!("div(2,2,0)".parse::<Recipe>().unwrap().stages[0], Stage::Divisor { a: 2, b: 2, beta: 0, seed: None });

    for bad in ["S(0,0)", "cut(1)", "S(1,2) | S(1,1)", "T(1)", "pts(3)", "nu(x):0", "S(1,2) | proj(1,a)", "div(0,3,0)"] {
        let built = bad.parse::<Recipe>().and_then(|r| r.build(&k(), 0));
        assert!(built.is_err(), "{bad}");
    }
}

#[test]
fn exactness_certificate_is_not_fooled_by_shared_seeds() {
    // the point sampler and the certificate share seed 11
    let (_, i) = random_points(&k(), 3, 6, 11).unwrap();
    let res = crate::resolution::free_resolution(&i).unwrap();
    assert!(res.exactness_certificate(11));
}
