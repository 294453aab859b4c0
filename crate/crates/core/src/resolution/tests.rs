use proptest::prelude::*;

use super::*;
use crate::polycore::{Monomial, MonomialOrder, Polynomial, PrimeField, Rationals, Ring};

fn fp(n: usize) -> Ring<PrimeField> {
    Ring::new(PrimeField::new(32003).unwrap(), n).unwrap()
}

fn twisted_cubic<F: Field>(r: Ring<F>) -> Ideal<F> {
    Ideal::parse(r, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]).unwrap()
}

fn check_resolution<F: Field>(ideal: &Ideal<F>, res: &FreeResolution<F>) -> BettiTable {
    assert!(res.is_complex(), "d∘d != 0");
    assert!(res.has_no_unit_entries());
    assert!(res.exactness_certificate(7));
    let t = betti_table(res).unwrap();
    assert!(euler_identity_holds(ideal, &t).unwrap());
    t
}

#[test]
fn koszul_complex() {
    let r = fp(3);
    let i = Ideal::parse(r, &["x0", "x1", "x2"]).unwrap();
    let res = free_resolution(&i).unwrap();
    let t = check_resolution(&i, &res);
    assert_eq!(t, BettiTable::from_rows(&[(0, 0, &[1, 3, 3, 1])]));
    assert_eq!(res.ranks(), vec![1, 3, 3, 1]);
}

#[test]
fn twisted_cubic_resolution() {
    let i = twisted_cubic(fp(4));
    let res = free_resolution(&i).unwrap();
    let t = check_resolution(&i, &res);
    assert_eq!(t, BettiTable::from_entries([(0, 0, 1), (1, 1, 3), (2, 1, 2)]));
    let hs = hilbert_series(&i).unwrap();
    assert_eq!(hs.numerator, vec![1, 0, -3, 2]);
    assert_eq!(hs.h_vector, vec![1, 2]);
    assert_eq!(hs.hilbert_function(4), vec![1, 4, 7, 10]);
    let inv = numeric_invariants(&i, &t).unwrap();
    assert_eq!(
        (inv.dimension, inv.degree, inv.codimension, inv.projective_dimension, inv.regularity),
        (1, 3, 2, 2, 1)
    );
    assert!(inv.is_acm);
    assert_eq!(inv.n2p, N2p::All);
}

#[test]
fn twisted_cubic_over_rationals_and_lex() {
    let a = betti_numbers(&twisted_cubic(Ring::new(Rationals, 4).unwrap())).unwrap();
    let lex = fp(4).reordered(MonomialOrder::Lex);
    let b = betti_numbers(&twisted_cubic(lex)).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.get(2, 1), 2);
}

#[test]
fn minimalize_is_idempotent_and_agrees_with_ranks() {
    let i = twisted_cubic(fp(4));
    let frame = schreyer_resolution(i.ring(), i.groebner(), None).unwrap();
    assert!(frame.is_complex());
    let expected = BettiTable::from_entries([(0, 0, 1), (1, 1, 3), (2, 1, 2)]);
    assert_eq!(betti_from_ranks(&frame), expected);
    let once = minimalize(&frame);
    let twice = minimalize(&once);
    assert_eq!(once.ranks(), vec![1, 3, 2]);
    assert_eq!(twice.ranks(), once.ranks());
    assert_eq!(betti_table(&twice).unwrap(), expected);
}

#[test]
fn padded_identity_summand_is_cancelled() {
    let i = twisted_cubic(fp(4));
    let r = i.ring().clone();
    let min = free_resolution(&i).unwrap();
    // F_1 ⊕ S(-3) ← F_2 ⊕ S(-3) with the identity on the new summand
    let mut padded = min.clone();
    padded.modules[1].twists.push(3);
    padded.modules[2].twists.push(3);
    padded.maps[0].source = padded.modules[1].clone();
    padded.maps[0].columns.push(Vec::new());
    padded.maps[1].target = padded.modules[1].clone();
    padded.maps[1].source = padded.modules[2].clone();
    padded.maps[1].columns.push(vec![(3, r.one())]);
    padded.minimal = false;
    assert!(padded.is_complex());
    assert!(betti_table(&padded).is_err());
    let back = minimalize(&padded);
    assert_eq!(back.ranks(), vec![1, 3, 2]);
    assert_eq!(betti_table(&back).unwrap(), betti_table(&min).unwrap());
}

#[test]
fn module_syzygy_examples() {
    let r = fp(2);
    let x = |s: &str| crate::polycore::parse_polynomial(s, &r).unwrap();
    let m = GradedMatrix::row(&r, &[x("x0"), x("x1")]).unwrap();
    let s = module_syzygies(&r, &m).unwrap();
    assert_eq!(s.ncols(), 1);
    assert_eq!(s.source.twists, vec![2]);
    assert!(m.compose(&r, &s).is_zero());
    let col = &s.columns[0];
    assert_eq!(col.len(), 2);
    assert_eq!(r.add(&col[0].1, &x("x1")).is_zero() || r.sub(&col[0].1, &x("x1")).is_zero(), true);

    let m = GradedMatrix::row(&r, &[x("x0^2"), x("x0*x1")]).unwrap();
    let s = module_syzygies(&r, &m).unwrap();
    assert_eq!(s.ncols(), 1);
    assert_eq!(s.source.twists, vec![3]);
    assert!(m.compose(&r, &s).is_zero());

    let r4 = fp(4);
    let i = twisted_cubic(r4.clone());
    let m = GradedMatrix::row(&r4, i.generators()).unwrap();
    let s = module_syzygies(&r4, &m).unwrap();
    assert_eq!(s.source.twists, vec![3, 3]);
    assert!(m.compose(&r4, &s).is_zero());
}

#[test]
fn hilbert_numerator_examples() {
    assert_eq!(monomial_numerator(&[]), vec![1]);
    assert_eq!(monomial_numerator(&[Monomial::one()]), vec![0]);
    let x = |e: &[u32]| Monomial::from_exponents(e).unwrap();
    // (x0*x1, x0*x2): 1 - 2t^2 + t^3
    assert_eq!(monomial_numerator(&[x(&[1, 1, 0]), x(&[1, 0, 1])]), vec![1, 0, -2, 1]);
    assert_eq!(divide_out_one_minus_t(&[1, 0, -2, 1]), vec![1, 1, -1]);
    let zero = Ideal::zero(fp(3));
    let hs = hilbert_series(&zero).unwrap();
    assert_eq!(hs.numerator, vec![1]);
    assert_eq!(hs.krull_dimension(), Some(3));
    assert!(matches!(numeric_invariants(&zero, &BettiTable::new()), Err(AlgebraError::ZeroIdeal)));
}

#[test]
fn betti_table_formats() {
    let t = BettiTable::from_rows(&[(0, 0, &[1]), (1, 1, &[10, 16, 9]), (2, 1, &[1, 14, 26, 20, 5])]);
    let grid = t.to_grid();
    let want = "   0  1  2  3  4 5\n\
                0: 1\n\
                1:   10 16  9\n\
                2:    1 14 26 20 5\n";
    assert_eq!(grid, want, "\n{grid}");
    assert_eq!(BettiTable::from_csv(&t.to_csv()).unwrap(), t);
    assert!(t.to_kv().contains("beta.1.2=1\n"));
    assert_eq!(N2p::of(&t), N2p::UpTo(0));
    assert_eq!(t.euler_numerator()[..3], [1, 0, -10]);
}

#[test]
fn grid_keeps_empty_rows() {
    let t = BettiTable::from_entries([(0, 0, 1), (1, 3, 2)]);
    assert_eq!(t.to_grid(), "   0 1\n0: 1\n1:\n2:\n3:   2\n");
}

#[test]
fn truncated_tables_agree_in_low_degree() {
    let i = twisted_cubic(fp(4));
    let full = betti_numbers(&i).unwrap();
    for bound in 2..=4u32 {
        let t = truncated_betti_numbers(&i, bound).unwrap();
        let want: Vec<_> = full.entries().filter(|&((a, b), _)| a + b <= bound as usize).collect();
        assert_eq!(t.entries().collect::<Vec<_>>(), want, "bound {bound}");
    }
    let two_strands = Ideal::parse(fp(3), &["x0^2", "x1^3"]).unwrap();
    assert_eq!(truncated_betti_numbers(&two_strands, 2).unwrap(), BettiTable::from_entries([(0, 0, 1), (1, 1, 1)]));
}

#[test]
fn zero_ideal_has_trivial_table() {
    let t = betti_numbers(&Ideal::zero(fp(3))).unwrap();
    assert_eq!(t, BettiTable::from_entries([(0, 0, 1)]));
    assert_eq!(t.to_grid(), "   0\n0: 1\n");
}

fn arb_quadric(nvars: usize) -> impl Strategy<Value = Vec<(u32, usize)>> {
    let count = nvars * (nvars + 1) / 2;
    prop::collection::vec((1u32..32003, 0..count), 1..4)
}

fn quadric(r: &Ring<PrimeField>, spec: &[(u32, usize)]) -> Polynomial<PrimeField> {
    let n = r.nvars();
    let mut mons = Vec::new();
    for a in 0..n {
        for b in a..n {
            mons.push(Monomial::var(a).mul(&Monomial::var(b)));
        }
    }
    r.from_terms(spec.iter().map(|&(c, i)| (c, mons[i])))
}

fn count_standard(lms: &[Monomial], n: usize, d: u32) -> i64 {
    fn rec(i: usize, n: usize, left: u32, cur: &mut Vec<u32>, lms: &[Monomial]) -> i64 {
        if i == n - 1 {
            cur[i] = left;
            let m = Monomial::from_exponents(cur).unwrap();
            return i64::from(!lms.iter().any(|l| l.divides(&m)));
        }
        (0..=left)
            .map(|a| {
                cur[i] = a;
                rec(i + 1, n, left - a, cur, lms)
            })
            .sum()
    }
    rec(0, n, d, &mut vec![0; n], lms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hilbert_function_counts_standard_monomials(
        gens in prop::collection::vec(prop::collection::vec(0u32..3, 4), 1..6)
    ) {
        let lms: Vec<Monomial> = gens.iter().map(|e| Monomial::from_exponents(e).unwrap()).collect();
        let hs = HilbertSeries { numerator: monomial_numerator(&lms), h_vector: vec![], nvars: 4 };
        let hf = hs.hilbert_function(8);
        for d in 0..8u32 {
            prop_assert_eq!(hf[d as usize], count_standard(&lms, 4, d));
        }
    }

    #[test]
    fn random_quadrics_resolve_consistently(
        qs in prop::collection::vec(arb_quadric(4), 1..5)
    ) {
        let r = fp(4);
        let gens: Vec<_> = qs.iter().map(|q| quadric(&r, q)).filter(|q| !q.is_zero()).collect();
        let i = Ideal::new(r.clone(), gens).unwrap();
        prop_assume!(!i.is_zero());
        let frame = schreyer_resolution(&r, i.groebner(), None).unwrap();
        prop_assert!(frame.is_complex());
        let res = free_resolution(&i).unwrap();
        prop_assert!(res.is_complex());
        prop_assert!(res.length() <= 4);
        let t = betti_table(&res).unwrap();
        prop_assert_eq!(&t, &betti_from_ranks(&frame));
        prop_assert!(euler_identity_holds(&i, &t).unwrap());
        let lex = betti_numbers(&i.with_ring(r.reordered(MonomialOrder::Lex))).unwrap();
        prop_assert_eq!(t, lex);
    }
}
