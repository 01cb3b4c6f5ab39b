//! CM endomorphisms `[ω]` as pairs of rational maps, and their Lattès maps.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::ecurve::{Curve, Point};
use crate::error::{Error, Result};
use crate::kfield::KNum;
use crate::qring::{QuadInt, RingId};
use crate::ratfunc::{DegreeBudget, P1Point, RatFunc};

/// An endomorphism `(x, y) ↦ (X(x), y·Y(x))`, or the zero map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Endo {
    Zero,
    Maps { x: RatFunc, y: RatFunc },
}

impl Endo {
    pub fn identity(field: RingId) -> Endo {
        Endo::Maps {
            x: RatFunc::identity(field),
            y: RatFunc::one(field),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Endo::Zero)
    }

    pub fn x_map(&self) -> Option<&RatFunc> {
        match self {
            Endo::Zero => None,
            Endo::Maps { x, .. } => Some(x),
        }
    }

    pub fn y_map(&self) -> Option<&RatFunc> {
        match self {
            Endo::Zero => None,
            Endo::Maps { y, .. } => Some(y),
        }
    }

    /// Degree of the x-map, which equals the norm of `ω` for `[ω]`.
    pub fn degree(&self) -> usize {
        self.x_map().map_or(0, RatFunc::degree)
    }

    pub fn neg(&self) -> Endo {
        match self {
            Endo::Zero => Endo::Zero,
            Endo::Maps { x, y } => Endo::Maps {
                x: x.clone(),
                y: y.neg(),
            },
        }
    }

    /// The constant `c` with `X' = c·Y`, read off the invariant differential.
    /// For `[ω]` it is `ω` embedded in K; `None` if `X'/Y` is not constant.
    pub fn multiplier(&self) -> Option<KNum> {
        match self {
            Endo::Zero => None,
            Endo::Maps { x, y } => x.derivative().div(y).ok()?.as_constant(),
        }
    }

    /// `f(X) = f·Y²`, i.e. the pair really maps `E` to itself.
    pub fn preserves(&self, c: &Curve) -> bool {
        let Endo::Maps { x, y } = self else {
            return true;
        };
        let f = RatFunc::from_poly(c.rhs_poly());
        let Ok(fx) = f.compose(x, DegreeBudget(usize::MAX)) else {
            return false;
        };
        fx == f.mul(&y.mul(y))
    }

    /// Image of a point; kernel points and `∞` go to `∞`.
    pub fn eval_point(&self, c: &Curve, p: &Point) -> Result<Point> {
        if !c.contains(p) {
            return Err(Error::NotOnCurve);
        }
        let (Endo::Maps { x: xm, y: ym }, Point::Affine { x, y }) = (self, p) else {
            return Ok(Point::Infinity);
        };
        let P1Point::Finite(xv) = xm.eval(x) else {
            return Ok(Point::Infinity);
        };
        let P1Point::Finite(yv) = ym.eval(x) else {
            return Err(Error::InvalidEndo("y-map has a pole off the kernel"));
        };
        Ok(Point::Affine { x: xv, y: y * &yv })
    }
}

impl fmt::Display for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endo::Zero => f.write_str("0"),
            Endo::Maps { x, y } => write!(f, "({x}, y*({y}))"),
        }
    }
}

/// `[θ]`: `(−x, √−1)` on `y² = x³ + Ax`, `(ζ₃·x, 1)` on `y² = x³ + B`
/// with `ζ₃ = (−1 + √−3)/2`, the image of `ρ`.
pub fn cm_generator(c: &Curve) -> Endo {
    let f = c.field();
    match c.cm() {
        RingId::Gaussian => Endo::Maps {
            x: RatFunc::identity(f).neg(),
            y: RatFunc::constant(KNum::sqrt_minus_d(f)),
        },
        RingId::Eisenstein => Endo::Maps {
            x: RatFunc::identity(f).scale(&KNum::embed(&QuadInt::theta(f))),
            y: RatFunc::one(f),
        },
    }
}

/// Sum in `End(E)` via the chord-tangent law on the generic point.
pub fn endo_add(c: &Curve, phi: &Endo, psi: &Endo) -> Result<Endo> {
    let (Endo::Maps { x: x1, y: y1 }, Endo::Maps { x: x2, y: y2 }) = (phi, psi) else {
        return Ok(if phi.is_zero() { psi.clone() } else { phi.clone() });
    };
    let field = c.field();
    let f = RatFunc::from_poly(c.rhs_poly());
    let k = |n: i64| KNum::from_int(field, n);

    if x1 != x2 {
        let dy = y2.sub(y1);
        let dx = x2.sub(x1);
        let lam_sq = f.mul(&dy.mul(&dy)).div(&dx.mul(&dx))?;
        let x3 = lam_sq.sub(x1).sub(x2);
        let y3 = dy.mul(&x1.sub(&x3)).div(&dx)?.sub(y1);
        return Ok(Endo::Maps { x: x3, y: y3 });
    }
    if *y1 == y2.neg() {
        return Ok(Endo::Zero);
    }
    if y1 != y2 {
        return Err(Error::InvalidEndo("equal x-maps with unrelated y-maps"));
    }
    // doubling: λ = (3X² + A)/(2yY)
    let t = x1.mul(x1).scale(&k(3)).add(&RatFunc::constant(c.a().clone()));
    let two_fy = f.mul(y1).scale(&k(2));
    let lam_sq = t.mul(&t).div(&two_fy.mul(y1).scale(&k(2)))?;
    let x3 = lam_sq.sub(&x1.scale(&k(2)));
    let y3 = t.mul(&x1.sub(&x3)).div(&two_fy)?.sub(y1);
    Ok(Endo::Maps { x: x3, y: y3 })
}

/// `φ ∘ ψ`: `X = X_φ ∘ X_ψ`, `Y = (Y_φ ∘ X_ψ)·Y_ψ`.
pub fn endo_compose(c: &Curve, phi: &Endo, psi: &Endo, budget: DegreeBudget) -> Result<Endo> {
    let (Endo::Maps { x: x1, y: y1 }, Endo::Maps { x: x2, y: y2 }) = (phi, psi) else {
        return Ok(Endo::Zero);
    };
    for m in [x1, x2] {
        if m.field() != c.field() {
            return Err(Error::RingMismatch(c.field(), m.field()));
        }
    }
    let x = x1.compose(x2, budget)?;
    // Y carries no extra information about the degree; only X is budgeted
    let y = y1.compose(x2, DegreeBudget(usize::MAX))?.mul(y2);
    Ok(Endo::Maps { x, y })
}

pub fn endo_eq(phi: &Endo, psi: &Endo) -> bool {
    phi == psi
}

fn mul_by_int(c: &Curve, m: &BigInt) -> Result<Endo> {
    let id = Endo::identity(c.field());
    let mut acc = Endo::Zero;
    let bits = m.abs();
    for i in (0..bits.bits()).rev() {
        acc = endo_add(c, &acc, &acc)?;
        if bits.bit(i) {
            acc = endo_add(c, &acc, &id)?;
        }
    }
    Ok(if m.is_negative() { acc.neg() } else { acc })
}

/// `[a + bθ] = [a] + [b] ∘ [θ]`.
pub fn endo_from_quadint(c: &Curve, w: &QuadInt, budget: DegreeBudget) -> Result<Endo> {
    if w.ring() != c.cm() {
        return Err(Error::RingMismatch(c.cm(), w.ring()));
    }
    let norm: u128 = w.norm().try_into().unwrap_or(u128::MAX);
    budget.check(norm)?;
    let a = mul_by_int(c, w.a())?;
    if w.b().is_zero() {
        return Ok(a);
    }
    let b = mul_by_int(c, w.b())?;
    let b_theta = endo_compose(c, &b, &cm_generator(c), budget)?;
    endo_add(c, &a, &b_theta)
}

/// `k`-fold composite `φᵏ`, with the budget checked up front.
pub fn endo_iterate(c: &Curve, phi: &Endo, k: u32, budget: DegreeBudget) -> Result<Endo> {
    budget.check((phi.degree() as u128).saturating_pow(k))?;
    let mut acc = Endo::identity(c.field());
    for _ in 0..k {
        acc = endo_compose(c, phi, &acc, budget)?;
    }
    Ok(acc)
}

/// The map `f` on ℙ¹ with `x ∘ [ω] = f ∘ x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LattesMap {
    pub curve: Curve,
    pub omega: QuadInt,
    pub map: RatFunc,
}

impl LattesMap {
    pub fn degree(&self) -> usize {
        self.map.degree()
    }
}

impl fmt::Display for LattesMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.map)
    }
}

pub fn lattes(c: &Curve, w: &QuadInt, budget: DegreeBudget) -> Result<LattesMap> {
    if w.is_zero() {
        return Err(Error::ZeroInput);
    }
    let e = endo_from_quadint(c, w, budget)?;
    let map = e.x_map().expect("nonzero ω gives a nonzero map").clone();
    Ok(LattesMap {
        curve: c.clone(),
        omega: w.clone(),
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ratfunc::Poly;
    use proptest::prelude::*;

    const B: DegreeBudget = DegreeBudget::DEFAULT;

    fn q(ring: RingId, a: i64, b: i64) -> QuadInt {
        QuadInt::new(ring, a, b)
    }

    fn endo(c: &Curve, a: i64, b: i64) -> Endo {
        endo_from_quadint(c, &q(c.cm(), a, b), B).unwrap()
    }

    fn small_elements(ring: RingId, max_norm: i64) -> Vec<QuadInt> {
        let mut out = Vec::new();
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                let w = q(ring, a, b);
                if !w.is_zero() && w.norm() <= max_norm.into() {
                    out.push(w);
                }
            }
        }
        out
    }

    #[test]
    fn generators_have_the_right_order() {
        let g = Curve::standard(RingId::Gaussian);
        let i = cm_generator(&g);
        let ii = endo_compose(&g, &i, &i, B).unwrap();
        assert_eq!(ii, Endo::identity(RingId::Gaussian).neg());
        assert_eq!(ii, endo(&g, -1, 0));

        let e = Curve::standard(RingId::Eisenstein);
        let r = cm_generator(&e);
        let r3 = endo_iterate(&e, &r, 3, B).unwrap();
        assert_eq!(r3, Endo::identity(RingId::Eisenstein));
        assert_ne!(endo_iterate(&e, &r, 2, B).unwrap(), Endo::identity(RingId::Eisenstein));
    }

    #[test]
    fn duplication_formula() {
        // [2]: x ↦ (x⁴ − 2Ax² − 8Bx + A²) / (4(x³ + Ax + B))
        for (ring, a, b) in [
            (RingId::Gaussian, 1, 0),
            (RingId::Gaussian, -3, 0),
            (RingId::Eisenstein, 0, 1),
            (RingId::Eisenstein, 0, 5),
        ] {
            let k = |n: i64| KNum::from_int(ring, n);
            let c = Curve::new(ring, k(a), k(b)).unwrap();
            let num = Poly::from_ints(ring, &[a * a, -8 * b, -2 * a, 0, 1]);
            let den = Poly::from_ints(ring, &[4 * b, 4 * a, 0, 4]);
            let expected = RatFunc::normalize(num, den).unwrap();
            assert_eq!(endo(&c, 2, 0).x_map().unwrap(), &expected);
        }
    }

    #[test]
    fn zero_and_negation() {
        let g = Curve::standard(RingId::Gaussian);
        assert_eq!(endo(&g, 0, 0), Endo::Zero);
        let w = endo(&g, 3, 4);
        let mw = endo(&g, -3, -4);
        assert_eq!(w.x_map(), mw.x_map());
        assert_ne!(w.y_map(), mw.y_map());
        assert_eq!(w.neg(), mw);
        assert_eq!(endo_add(&g, &w, &mw).unwrap(), Endo::Zero);
        assert_eq!(lattes(&g, &QuadInt::zero(RingId::Gaussian), B), Err(Error::ZeroInput));
    }

    #[test]
    fn mismatches_and_budget() {
        let g = Curve::standard(RingId::Gaussian);
        assert!(matches!(
            endo_from_quadint(&g, &q(RingId::Eisenstein, 1, 1), B),
            Err(Error::RingMismatch(..))
        ));
        assert_eq!(
            endo_from_quadint(&g, &q(RingId::Gaussian, 30, 40), B),
            Err(Error::DegreeBudgetExceeded {
                attempted: 2500,
                budget: 2000
            })
        );
        let phi = endo(&g, 2, 1);
        assert_eq!(
            endo_iterate(&g, &phi, 5, B),
            Err(Error::DegreeBudgetExceeded {
                attempted: 3125,
                budget: 2000
            })
        );
    }

    #[test]
    fn lattes_examples() {
        let g = Curve::standard(RingId::Gaussian);
        let li = lattes(&g, &q(RingId::Gaussian, 0, 1), B).unwrap();
        assert_eq!(li.to_string(), "-x");
        let l = lattes(&g, &q(RingId::Gaussian, 2, 1), B).unwrap();
        assert_eq!(l.degree(), 5);
        let e = Curve::standard(RingId::Eisenstein);
        let sqrt_m3 = QuadInt::sqrt_minus_three();
        assert_eq!(lattes(&e, &sqrt_m3, B).unwrap().degree(), 3);
    }

    #[test]
    fn kernel_maps_to_infinity() {
        let g = Curve::standard(RingId::Gaussian);
        let t = Point::affine(KNum::zero(RingId::Gaussian), KNum::zero(RingId::Gaussian));
        assert_eq!(endo(&g, 1, 1).eval_point(&g, &t).unwrap(), Point::Infinity);
        assert_eq!(endo(&g, 0, 1).eval_point(&g, &t).unwrap(), t);
    }

    #[test]
    fn structure_for_all_small_elements() {
        for ring in RingId::ALL {
            let c = Curve::standard(ring);
            for w in small_elements(ring, 25) {
                let phi = endo_from_quadint(&c, &w, B).unwrap();
                let n: usize = w.norm().try_into().unwrap();
                assert_eq!(phi.degree(), n, "{w}");
                assert_eq!(phi.multiplier(), Some(KNum::embed(&w)), "{w}");
                assert!(phi.preserves(&c), "{w}");
            }
        }
    }

    #[test]
    fn pointwise_action_matches_group_law() {
        for ring in RingId::ALL {
            let c = Curve::standard(ring);
            let pts = fixtures::points(&c);
            for w in small_elements(ring, 13) {
                let phi = endo_from_quadint(&c, &w, B).unwrap();
                for p in &pts {
                    assert_eq!(
                        phi.eval_point(&c, p).unwrap(),
                        c.quadint_action(&w, p).unwrap(),
                        "{w} at {p}"
                    );
                }
            }
        }
    }

    fn element() -> impl Strategy<Value = (RingId, i64, i64)> {
        (
            prop_oneof![Just(RingId::Gaussian), Just(RingId::Eisenstein)],
            -3i64..=3,
            -3i64..=3,
        )
            .prop_filter("nonzero", |(_, a, b)| (*a, *b) != (0, 0))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn ring_homomorphism((ring, a, b) in element(), (c2, d) in (-2i64..=2, -2i64..=2)) {
            let c = Curve::standard(ring);
            let w = q(ring, a, b);
            let v = q(ring, c2, d);
            let ew = endo_from_quadint(&c, &w, B).unwrap();
            let ev = endo_from_quadint(&c, &v, B).unwrap();
            prop_assert_eq!(endo_compose(&c, &ew, &ev, B).unwrap(), endo_from_quadint(&c, &(&w * &v), B).unwrap());
            prop_assert_eq!(endo_add(&c, &ew, &ev).unwrap(), endo_from_quadint(&c, &(&w + &v), B).unwrap());
        }

        #[test]
        fn lattes_maps_commute((ring, a, b) in element(), (c2, d) in (-2i64..=2, -2i64..=2)) {
            let c = Curve::standard(ring);
            let w = q(ring, a, b);
            let v = q(ring, c2, d);
            prop_assume!(!v.is_zero());
            let fw = lattes(&c, &w, B).unwrap().map;
            let fv = lattes(&c, &v, B).unwrap().map;
            let fwv = lattes(&c, &(&w * &v), B).unwrap().map;
            prop_assert_eq!(fw.compose(&fv, B).unwrap(), fwv.clone());
            prop_assert_eq!(fv.compose(&fw, B).unwrap(), fwv);
        }
    }
}
