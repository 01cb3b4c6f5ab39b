use super::*;
use proptest::prelude::*;

const G: RingId = RingId::Gaussian;
const B: DegreeBudget = DegreeBudget::DEFAULT;

fn p(field: RingId, c: &[i64]) -> Poly {
    Poly::from_ints(field, c)
}

fn rf(field: RingId, num: &[i64], den: &[i64]) -> RatFunc {
    RatFunc::normalize(p(field, num), p(field, den)).unwrap()
}

#[test]
fn normalize_examples() {
    assert_eq!(rf(G, &[0, 0, 2], &[0, 2]), RatFunc::identity(G));
    let half_x = rf(G, &[0, 1], &[2]);
    assert_eq!(half_x.num(), &Poly::monomial(KNum::from_ratio(G, 1, 2), 1));
    assert!(half_x.den().is_one());
    let f = rf(G, &[3, 0, -3], &[6, 6]);
    assert_eq!(RatFunc::normalize(f.num().clone(), f.den().clone()).unwrap(), f);
    assert_eq!(f, rf(G, &[-1, 1], &[-2]));
    assert_eq!(f.neg(), rf(G, &[-1, 1], &[2]));
    assert_eq!(
        RatFunc::normalize(p(G, &[1]), Poly::zero(G)),
        Err(Error::ZeroDenominator)
    );
}

#[test]
fn compose_examples() {
    let neg = rf(G, &[0, -1], &[1]);
    assert_eq!(neg.compose(&neg, B).unwrap(), RatFunc::identity(G));
    let f = rf(G, &[1, 0, 3], &[0, 2, 0, 1]);
    assert_eq!(f.compose(&RatFunc::identity(G), B).unwrap(), f);
    assert_eq!(RatFunc::identity(G).compose(&f, B).unwrap(), f);
    assert_eq!(f.compose(&f, B).unwrap().degree(), 9);
}

#[test]
fn compose_against_direct_substitution() {
    // f(g) computed with field arithmetic on rational functions
    let f = rf(G, &[1, 0, 3], &[0, 2, 0, 1]);
    let g = rf(G, &[-1, 2], &[5, 0, 1]);
    let mut num = RatFunc::zero(G);
    for (k, c) in f.num().coeffs().iter().enumerate() {
        num = num.add(&g.pow(k as i64).unwrap().scale(c));
    }
    let mut den = RatFunc::zero(G);
    for (k, c) in f.den().coeffs().iter().enumerate() {
        den = den.add(&g.pow(k as i64).unwrap().scale(c));
    }
    assert_eq!(f.compose(&g, B).unwrap(), num.div(&den).unwrap());
}

#[test]
fn budget_is_enforced() {
    let f = rf(G, &[0, 0, 0, 1], &[1]);
    assert_eq!(
        f.compose(&f, DegreeBudget(8)),
        Err(Error::DegreeBudgetExceeded {
            attempted: 9,
            budget: 8
        })
    );
    assert!(f.iterate(3, DegreeBudget(26)).is_err());
    assert_eq!(f.iterate(3, DegreeBudget(27)).unwrap().degree(), 27);
}

#[test]
fn constant_pole() {
    let f = rf(G, &[1], &[0, 1]);
    assert_eq!(f.compose(&RatFunc::zero(G), B), Err(Error::ConstantPole));
}

#[test]
fn eval_examples() {
    let inv = rf(G, &[1], &[0, 1]);
    assert_eq!(inv.eval(&KNum::zero(G)), P1Point::Infinity);
    let i = KNum::sqrt_minus_d(G);
    let x0 = &KNum::one(G) + &i;
    assert_eq!(
        rf(G, &[0, 0, 1], &[1]).eval(&x0),
        P1Point::Finite(&i * &KNum::from_int(G, 2))
    );
    assert_eq!(inv.eval_p1(&P1Point::Infinity), P1Point::Finite(KNum::zero(G)));
    assert_eq!(
        rf(G, &[0, 0, 1], &[1, 1]).eval_p1(&P1Point::Infinity),
        P1Point::Infinity
    );
    assert_eq!(
        rf(G, &[1, 6], &[1, 2]).eval_p1(&P1Point::Infinity),
        P1Point::Finite(KNum::from_int(G, 3))
    );
}

#[test]
fn display() {
    assert_eq!(rf(G, &[0, -1], &[1]).to_string(), "-x");
    assert_eq!(rf(G, &[1, 0, 1], &[0, 4]).to_string(), "(1/4*x^2 + 1/4)/(x)");
}

fn small_rf(field: RingId) -> impl Strategy<Value = RatFunc> {
    let coeff = (-6i64..6, 1i64..4, -3i64..3).prop_map(move |(a, b, c)| {
        KNum::new(
            field,
            BigRational::new(a.into(), b.into()),
            BigRational::from_integer(c.into()),
        )
    });
    (
        prop::collection::vec(coeff.clone(), 1..5),
        prop::collection::vec(coeff, 1..5),
    )
        .prop_filter_map("zero denominator or constant", move |(n, d)| {
            let f = RatFunc::normalize(Poly::from_coeffs(field, n), Poly::from_coeffs(field, d)).ok()?;
            (!f.is_constant()).then_some(f)
        })
}

fn field() -> impl Strategy<Value = RingId> {
    prop_oneof![Just(RingId::Gaussian), Just(RingId::Eisenstein)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative((f, g, h) in field().prop_flat_map(|k| (small_rf(k), small_rf(k), small_rf(k)))) {
        let left = f.compose(&g, B).unwrap().compose(&h, B).unwrap();
        let right = f.compose(&g.compose(&h, B).unwrap(), B).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn degrees_multiply((f, g) in field().prop_flat_map(|k| (small_rf(k), small_rf(k)))) {
        prop_assert_eq!(f.compose(&g, B).unwrap().degree(), f.degree() * g.degree());
    }

    #[test]
    fn compose_output_is_canonical((f, g) in field().prop_flat_map(|k| (small_rf(k), small_rf(k)))) {
        let h = f.compose(&g, B).unwrap();
        prop_assert!(h.den().is_monic());
        prop_assert!(gcd_euclid(h.num(), h.den()).is_one() || h.is_zero());
    }

    #[test]
    fn eval_commutes_with_composition(
        (f, g) in field().prop_flat_map(|k| (small_rf(k), small_rf(k))),
        x in -20i64..20,
    ) {
        let field = f.field();
        let x0 = KNum::from_ratio(field, x, 7);
        let h = f.compose(&g, B).unwrap();
        if let P1Point::Finite(gx) = g.eval(&x0) {
            if let P1Point::Finite(fgx) = f.eval(&gx) {
                prop_assert_eq!(h.eval(&x0), P1Point::Finite(fgx));
            }
        }
    }

    #[test]
    fn equality_is_a_congruence((f, g) in field().prop_flat_map(|k| (small_rf(k), small_rf(k)))) {
        // rebuild f and g from unreduced forms and compose again
        let f2 = RatFunc::normalize(f.num().mul(g.den()), f.den().mul(g.den())).unwrap();
        let g2 = RatFunc::normalize(g.num().scale(&KNum::from_int(g.field(), 3)), g.den().scale(&KNum::from_int(g.field(), 3))).unwrap();
        prop_assert_eq!(&f2, &f);
        prop_assert_eq!(f.compose(&g, B).unwrap(), f2.compose(&g2, B).unwrap());
    }

    #[test]
    fn field_operations((f, g) in field().prop_flat_map(|k| (small_rf(k), small_rf(k)))) {
        prop_assert_eq!(f.add(&g).sub(&g), f.clone());
        prop_assert_eq!(f.mul(&g).div(&g).unwrap(), f.clone());
        prop_assert_eq!(f.mul(&f.inv().unwrap()), RatFunc::one(f.field()));
    }
}
