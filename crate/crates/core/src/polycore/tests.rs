use proptest::prelude::*;

use super::*;

fn qq(n: usize) -> Ring<Rationals> {
    Ring::new(Rationals, n).unwrap()
}

fn p(r: &Ring<Rationals>, s: &str) -> Polynomial<Rationals> {
    parse_polynomial(s, r).unwrap()
}

#[test]
fn arithmetic_examples() {
    let r = qq(2);
    let x0 = p(&r, "x0");
    assert!(poly_arith(&r, ArithOp::Add, &x0, &r.neg(&x0)).unwrap().is_zero());
    let prod = poly_arith(&r, ArithOp::Mul, &p(&r, "x0+x1"), &p(&r, "x0-x1")).unwrap();
    assert_eq!(prod, p(&r, "x0^2 - x1^2"));

    let f5 = Ring::new(PrimeField::new(5).unwrap(), 1).unwrap();
    let five = parse_polynomial("5", &f5).unwrap();
    let x = f5.var(0);
    assert!(five.is_zero());
    assert!(poly_arith(&f5, ArithOp::Scale, &x, &f5.constant(5u32 % 5)).unwrap().is_zero());
    assert!(poly_arith(&f5, ArithOp::Scale, &x, &f5.constant(4)).unwrap() == f5.constant_times_var(4, 0));
}

impl Ring<PrimeField> {
    fn constant_times_var(&self, c: u32, i: usize) -> Polynomial<PrimeField> {
        self.scale(&self.var(i), &c)
    }
}

#[test]
fn ring_mismatch_is_reported() {
    let small = qq(2);
    let big = qq(4);
    let f = p(&big, "x3");
    assert!(poly_arith(&small, ArithOp::Add, &f, &small.var(0)).is_err());
}

#[test]
fn substitute_linear_examples() {
    let r = qq(3);
    let f = p(&r, "x0*x2 - x1^2");
    let id: Vec<_> = (0..3).map(|i| r.var(i)).collect();
    assert_eq!(r.substitute_linear(&f, &id, &r).unwrap(), f);

    let perm = vec![r.var(1), r.var(0), r.var(2)];
    assert_eq!(r.substitute_linear(&f, &perm, &r).unwrap(), p(&r, "x1*x2 - x0^2"));

    // (x0+x1)^2 expanded by hand
    let sq = p(&r, "x0^2");
    let imgs = vec![p(&r, "x0+x1"), r.var(1), r.var(2)];
    assert_eq!(r.substitute_linear(&sq, &imgs, &r).unwrap(), p(&r, "x0^2 + 2*x0*x1 + x1^2"));

    assert!(r.substitute_linear(&f, &imgs[..2], &r).is_err());
    let bad = vec![p(&r, "x0^2"), r.var(1), r.var(2)];
    assert!(r.substitute_linear(&f, &bad, &r).is_err());
}

#[test]
fn grevlex_and_lex_agree_on_first_variable_powers() {
    for a in 0..6u32 {
        for b in 0..6u32 {
            let ma = Monomial::var_pow(0, a);
            let mb = Monomial::var_pow(0, b);
            assert_eq!(
                MonomialOrder::Grevlex.cmp(&ma, &mb, 4, None),
                MonomialOrder::Lex.cmp(&ma, &mb, 4, None)
            );
        }
    }
}

fn arb_poly(nvars: usize) -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
    prop::collection::vec((-5i64..6, prop::collection::vec(0u32..4, nvars)), 1..6)
}

fn build(r: &Ring<Rationals>, spec: &[(i64, Vec<u32>)]) -> Polynomial<Rationals> {
    r.from_terms(
        spec.iter().map(|(c, e)| (r.field().from_i64(*c), Monomial::from_exponents(e).unwrap())),
    )
}

fn arb_order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::Grevlex),
        Just(MonomialOrder::Lex),
        (0usize..5).prop_map(MonomialOrder::BlockElimination),
    ]
}

proptest! {
    #[test]
    fn leading_monomial_is_multiplicative(a in arb_poly(4), b in arb_poly(4), order in arb_order()) {
        let r = Ring::with_order(Rationals, 4, order).unwrap();
        let f = build(&r, &a);
        let g = build(&r, &b);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = r.mul(&f, &g);
        prop_assert_eq!(fg.lm(), f.lm().mul(&g.lm()));
    }

    #[test]
    fn block_order_puts_eliminated_variables_on_top(
        e1 in prop::collection::vec(0u32..4, 5),
        e2 in prop::collection::vec(0u32..4, 5),
        k in 1usize..4,
    ) {
        let a = Monomial::from_exponents(&e1).unwrap();
        let mut e2 = e2;
        e2[..k].iter_mut().for_each(|e| *e = 0);
        let b = Monomial::from_exponents(&e2).unwrap();
        let a_has = (0..k).any(|i| a.exponent(i) > 0);
        let b_has = (0..k).any(|i| b.exponent(i) > 0);
        prop_assume!(a_has && !b_has);
        prop_assert_eq!(
            MonomialOrder::BlockElimination(k).cmp(&a, &b, 5, None),
            std::cmp::Ordering::Greater
        );
    }

    #[test]
    fn distributivity(a in arb_poly(3), b in arb_poly(3), c in arb_poly(3)) {
        let r = qq(3);
        let (f, g, h) = (build(&r, &a), build(&r, &b), build(&r, &c));
        let lhs = r.mul(&f, &r.add(&g, &h));
        let rhs = r.add(&r.mul(&f, &g), &r.mul(&f, &h));
        prop_assert_eq!(lhs, rhs);
    }
}
