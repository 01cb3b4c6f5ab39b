//! Exact arithmetic in the imaginary quadratic orders ℤ[i] and ℤ[ρ].
//!
//! Elements are written `a + b·θ` where θ = i (θ² = −1) for the Gaussian
//! integers and θ = ρ = (−1 + √−3)/2 (θ² = −1 − θ) for the Eisenstein
//! integers. The root-of-unity tests at the bottom of this module are the
//! ring-level form of the diagonal pre-periodicity criteria.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Which CM order an element (or a curve, or a field) belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingId {
    /// ℤ[i], discriminant −4.
    Gaussian,
    /// ℤ[ρ], discriminant −3.
    Eisenstein,
}

impl RingId {
    pub const ALL: [RingId; 2] = [RingId::Gaussian, RingId::Eisenstein];

    /// The `d` of the fraction field ℚ(√−d).
    pub fn d(self) -> u32 {
        match self {
            RingId::Gaussian => 1,
            RingId::Eisenstein => 3,
        }
    }

    /// Size of the unit group.
    pub fn unit_count(self) -> u32 {
        match self {
            RingId::Gaussian => 4,
            RingId::Eisenstein => 6,
        }
    }

    /// Symbol used for θ in the textual syntax.
    pub fn generator_symbol(self) -> &'static str {
        match self {
            RingId::Gaussian => "i",
            RingId::Eisenstein => "w",
        }
    }
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingId::Gaussian => "gaussian",
            RingId::Eisenstein => "eisenstein",
        })
    }
}

impl FromStr for RingId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gaussian" | "z[i]" => Ok(RingId::Gaussian),
            "eisenstein" | "z[w]" | "z[rho]" => Ok(RingId::Eisenstein),
            other => Err(format!("unknown ring `{other}` (expected gaussian or eisenstein)")),
        }
    }
}

/// An element `a + b·θ` of ℤ[i] or ℤ[ρ].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    ring: RingId,
    a: BigInt,
    b: BigInt,
}

impl QuadInt {
    pub fn new(ring: RingId, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt {
            ring,
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn from_int(ring: RingId, a: impl Into<BigInt>) -> Self {
        Self::new(ring, a, 0)
    }

    pub fn zero(ring: RingId) -> Self {
        Self::new(ring, 0, 0)
    }

    pub fn one(ring: RingId) -> Self {
        Self::new(ring, 1, 0)
    }

    /// The generator θ (i or ρ).
    pub fn theta(ring: RingId) -> Self {
        Self::new(ring, 0, 1)
    }

    /// √−3 = 1 + 2ρ in ℤ[ρ].
    pub fn sqrt_minus_three() -> Self {
        Self::new(RingId::Eisenstein, 1, 2)
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    /// Rational part `a`.
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// Coefficient `b` of θ.
    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn check_ring(&self, other: &QuadInt) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring, other.ring))
        }
    }

    pub fn try_add(&self, other: &QuadInt) -> Result<QuadInt> {
        self.check_ring(other)?;
        Ok(QuadInt::new(self.ring, &self.a + &other.a, &self.b + &other.b))
    }

    pub fn try_sub(&self, other: &QuadInt) -> Result<QuadInt> {
        self.check_ring(other)?;
        Ok(QuadInt::new(self.ring, &self.a - &other.a, &self.b - &other.b))
    }

    pub fn try_mul(&self, other: &QuadInt) -> Result<QuadInt> {
        self.check_ring(other)?;
        let (a, b, c, d) = (&self.a, &self.b, &other.a, &other.b);
        let bd = b * d;
        let out = match self.ring {
            RingId::Gaussian => QuadInt::new(self.ring, a * c - &bd, a * d + b * c),
            // ρ² = −1 − ρ
            RingId::Eisenstein => QuadInt::new(self.ring, a * c - &bd, a * d + b * c - &bd),
        };
        Ok(out)
    }

    /// Complex conjugate: a+bi ↦ a−bi, a+bρ ↦ (a−b) − bρ.
    pub fn conj(&self) -> QuadInt {
        match self.ring {
            RingId::Gaussian => QuadInt::new(self.ring, self.a.clone(), -&self.b),
            RingId::Eisenstein => QuadInt::new(self.ring, &self.a - &self.b, -&self.b),
        }
    }

    /// `q · conj(q)`, the degree of the endomorphism `[q]`.
    pub fn norm(&self) -> BigInt {
        let (a, b) = (&self.a, &self.b);
        match self.ring {
            RingId::Gaussian => a * a + b * b,
            RingId::Eisenstein => a * a - a * b + b * b,
        }
    }

    /// Exact quotient `self / q`; `Ok(None)` when `q` does not divide `self`.
    pub fn try_div(&self, q: &QuadInt) -> Result<Option<QuadInt>> {
        self.check_ring(q)?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = q.norm();
        let t = self.try_mul(&q.conj())?;
        let (qa, ra) = t.a.div_rem(&n);
        let (qb, rb) = t.b.div_rem(&n);
        if ra.is_zero() && rb.is_zero() {
            Ok(Some(QuadInt::new(self.ring, qa, qb)))
        } else {
            Ok(None)
        }
    }

    pub fn pow(&self, k: u32) -> QuadInt {
        let mut acc = QuadInt::one(self.ring);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Multiplicative order of a unit, read off the finite unit group.
    pub fn unit_order(&self) -> Option<u32> {
        units(self.ring)
            .into_iter()
            .find(|(u, _)| u == self)
            .map(|(_, ord)| ord)
    }
}

/// The unit group with the multiplicative order of each element.
pub fn units(ring: RingId) -> Vec<(QuadInt, u32)> {
    let q = |a: i64, b: i64| QuadInt::new(ring, a, b);
    match ring {
        RingId::Gaussian => vec![(q(1, 0), 1), (q(-1, 0), 2), (q(0, 1), 4), (q(0, -1), 4)],
        // ρ² = −1 − ρ, −ρ² = 1 + ρ
        RingId::Eisenstein => vec![
            (q(1, 0), 1),
            (q(-1, 0), 2),
            (q(0, 1), 3),
            (q(-1, -1), 3),
            (q(0, -1), 6),
            (q(1, 1), 6),
        ],
    }
}

fn unit_quotient(p: &QuadInt, q: &QuadInt) -> Result<Option<QuadInt>> {
    p.check_ring(q)?;
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroInput);
    }
    if p.norm() != q.norm() {
        return Ok(None);
    }
    p.try_div(q)
}

/// Smallest `k > 0` with `p^k = q^k`, i.e. the order of `p/q` as a root of
/// unity; `None` when `p/q` is not a root of unity.
pub fn unit_root_order(p: &QuadInt, q: &QuadInt) -> Result<Option<u32>> {
    Ok(unit_quotient(p, q)?.and_then(|u| u.unit_order()))
}

/// Smallest `k > 0` with `p^k = ±q^k`.
pub fn signed_root_order(p: &QuadInt, q: &QuadInt) -> Result<Option<u32>> {
    Ok(unit_root_order(p, q)?.map(|ord| if ord % 2 == 0 { ord / 2 } else { ord }))
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(self.ring, -self.a, -self.b)
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(self.ring, -&self.a, -&self.b)
    }
}

// Operator forms panic on a ring mismatch; use the `try_*` methods when the
// operands come from untrusted input.
macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&QuadInt> for &QuadInt {
            type Output = QuadInt;
            fn $m(self, rhs: &QuadInt) -> QuadInt {
                self.$try(rhs).expect("QuadInt ring mismatch")
            }
        }
        impl $tr for QuadInt {
            type Output = QuadInt;
            fn $m(self, rhs: QuadInt) -> QuadInt {
                (&self).$m(&rhs)
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sym = self.ring.generator_symbol();
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*{}", self.a, sign, self.b.abs(), sym)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> QuadInt {
        QuadInt::new(RingId::Gaussian, a, b)
    }

    fn e(a: i64, b: i64) -> QuadInt {
        QuadInt::new(RingId::Eisenstein, a, b)
    }

    // Power by repeated multiplication, kept apart from the unit table.
    fn naive_order(p: &QuadInt, q: &QuadInt) -> Option<u32> {
        (1..=12).find(|&k| p.pow(k) == q.pow(k))
    }

    #[test]
    fn add_examples() {
        assert_eq!(g(2, 1) + g(1, -2), g(3, -1));
        assert_eq!(g(5, 7) + QuadInt::zero(RingId::Gaussian), g(5, 7));
        assert_eq!(e(1, 2) + e(1, 2), e(2, 4));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(g(2, 1) * g(1, -2), g(4, -3));
        assert_eq!(e(1, 2) * e(1, 2), e(-3, 0));
        assert_eq!(QuadInt::sqrt_minus_three().pow(2), e(-3, 0));
        assert_eq!(g(3, -8) * QuadInt::one(RingId::Gaussian), g(3, -8));
    }

    #[test]
    fn eisenstein_generator_relation() {
        let w = QuadInt::theta(RingId::Eisenstein);
        let lhs = &(&w * &w) + &w;
        assert_eq!(
            lhs + QuadInt::one(RingId::Eisenstein),
            QuadInt::zero(RingId::Eisenstein)
        );
        assert_eq!(w.pow(3), QuadInt::one(RingId::Eisenstein));
    }

    #[test]
    fn conj_examples() {
        assert_eq!(g(2, 1).conj(), g(2, -1));
        assert_eq!(e(1, 2).conj(), e(-1, -2));
        assert_eq!(e(4, -9).conj().conj(), e(4, -9));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(g(2, 1).norm(), BigInt::from(5));
        assert_eq!(g(1, -2).norm(), BigInt::from(5));
        assert_eq!(e(1, 2).norm(), BigInt::from(3));
        assert_eq!(QuadInt::zero(RingId::Eisenstein).norm(), BigInt::zero());
    }

    #[test]
    fn division() {
        assert_eq!(g(2, 1).try_div(&g(1, -2)).unwrap(), Some(g(0, 1)));
        assert_eq!(g(3, 5).try_div(&g(3, 5)).unwrap(), Some(g(1, 0)));
        assert_eq!(g(3, 0).try_div(&g(2, 0)).unwrap(), None);
        assert_eq!(g(3, 0).try_div(&g(0, 0)), Err(Error::DivisionByZero));
        assert!(matches!(g(1, 0).try_div(&e(1, 0)), Err(Error::RingMismatch(..))));
    }

    #[test]
    fn cross_ring_is_error() {
        assert!(g(1, 1).try_add(&e(1, 1)).is_err());
        assert!(g(1, 1).try_mul(&e(1, 1)).is_err());
    }

    #[test]
    fn root_orders_of_examples() {
        assert_eq!(unit_root_order(&g(2, 1), &g(1, -2)).unwrap(), Some(4));
        assert_eq!(signed_root_order(&g(2, 1), &g(1, -2)).unwrap(), Some(2));
        assert_eq!(unit_root_order(&g(7, 3), &g(7, 3)).unwrap(), Some(1));
        assert_eq!(unit_root_order(&g(2, 0), &g(3, 0)).unwrap(), None);
        assert_eq!(signed_root_order(&g(2, 0), &g(3, 0)).unwrap(), None);

        let s = QuadInt::sqrt_minus_three();
        let w = QuadInt::theta(RingId::Eisenstein);
        assert_eq!(signed_root_order(&(&s * &w), &s).unwrap(), Some(3));
        assert_eq!(unit_root_order(&(&s * &w), &s).unwrap(), Some(3));
        assert_eq!(signed_root_order(&g(4, 1), &(-g(4, 1))).unwrap(), Some(1));
        assert_eq!(unit_root_order(&g(0, 0), &g(1, 0)), Err(Error::ZeroInput));
    }

    #[test]
    fn unit_table_matches_naive_powers() {
        for ring in RingId::ALL {
            let table = units(ring);
            assert_eq!(table.len() as u32, ring.unit_count());
            for (u, ord) in &table {
                assert!(u.is_unit());
                let one = QuadInt::one(ring);
                assert_eq!(naive_order(u, &one), Some(*ord), "{u}");
            }
        }
    }

    #[test]
    fn unit_multiples_are_exactly_the_roots_of_unity() {
        // q·u for every small u: a root of unity iff u is a unit.
        for ring in RingId::ALL {
            let q = QuadInt::new(ring, 3, -2);
            for a in -2i64..=2 {
                for b in -2i64..=2 {
                    let u = QuadInt::new(ring, a, b);
                    if u.is_zero() {
                        continue;
                    }
                    let got = unit_root_order(&(&q * &u), &q).unwrap();
                    assert_eq!(got.is_some(), u.is_unit(), "{u}");
                    assert_eq!(got, naive_order(&(&q * &u), &q));
                }
            }
        }
    }

    #[test]
    fn fourth_powers_of_gaussian_example() {
        assert_eq!(g(2, 1).pow(2), g(3, 4));
        assert_eq!(g(1, -2).pow(2), g(-3, -4));
        assert_eq!(g(2, 1).pow(4), g(-7, 24));
        assert_eq!(g(1, -2).pow(4), g(-7, 24));
    }

    #[test]
    fn display() {
        assert_eq!(g(2, 1).to_string(), "2+1*i");
        assert_eq!(g(1, -2).to_string(), "1-2*i");
        assert_eq!(e(-3, 0).to_string(), "-3");
        assert_eq!(e(0, 1).to_string(), "0+1*w");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn elem(ring: RingId) -> impl Strategy<Value = QuadInt> {
            (-40i64..40, -40i64..40).prop_map(move |(a, b)| QuadInt::new(ring, a, b))
        }

        fn ring() -> impl Strategy<Value = RingId> {
            prop_oneof![Just(RingId::Gaussian), Just(RingId::Eisenstein)]
        }

        proptest! {
            #[test]
            fn norm_is_multiplicative((p, q) in ring().prop_flat_map(|r| (elem(r), elem(r)))) {
                prop_assert_eq!((&p * &q).norm(), p.norm() * q.norm());
            }

            #[test]
            fn norm_zero_iff_zero(p in ring().prop_flat_map(elem)) {
                prop_assert!(!p.norm().is_negative());
                prop_assert_eq!(p.norm().is_zero(), p.is_zero());
            }

            #[test]
            fn division_round_trips((p, q) in ring().prop_flat_map(|r| (elem(r), elem(r)))) {
                prop_assume!(!q.is_zero());
                if let Some(r) = p.try_div(&q).unwrap() {
                    prop_assert_eq!(&q * &r, p.clone());
                }
                let prod = &p * &q;
                prop_assert_eq!(prod.try_div(&q).unwrap(), Some(p));
            }

            #[test]
            fn orders_are_minimal_powers((p, q) in ring().prop_flat_map(|r| (elem(r), elem(r)))) {
                prop_assume!(!p.is_zero() && !q.is_zero());
                let k = unit_root_order(&p, &q).unwrap();
                prop_assert_eq!(k, naive_order(&p, &q));
                if let Some(k) = k {
                    let s = signed_root_order(&p, &q).unwrap().unwrap();
                    prop_assert_eq!(k % s, 0);
                    prop_assert!(p.pow(s) == q.pow(s) || p.pow(s) == -q.pow(s));
                    for j in 1..s {
                        prop_assert!(p.pow(j) != q.pow(j) && p.pow(j) != -q.pow(j));
                    }
                } else {
                    prop_assert_eq!(signed_root_order(&p, &q).unwrap(), None);
                }
            }
        }
    }
}
