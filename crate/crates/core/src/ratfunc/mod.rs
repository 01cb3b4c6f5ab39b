//! Univariate polynomials and reduced rational functions over K.

mod gcd;
mod intpoly;
pub(crate) mod modular;
mod poly;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kfield::KNum;
use crate::qring::RingId;

pub use gcd::gcd_euclid;
pub use poly::Poly;

use intpoly::IntPoly;

/// Upper bound on the degree of any composition, so that requests whose
/// degree grows like `N(ω)^k` fail fast instead of running away.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeBudget(pub usize);

impl DegreeBudget {
    pub const DEFAULT: DegreeBudget = DegreeBudget(2000);

    pub fn check(self, attempted: u128) -> Result<()> {
        if attempted > self.0 as u128 {
            Err(Error::DegreeBudgetExceeded {
                attempted,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for DegreeBudget {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// `(re, im)` of a coefficient `re + im·√−d`.
pub type CoeffPair = (BigRational, BigRational);

/// A point of ℙ¹(K).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum P1Point {
    Finite(KNum),
    Infinity,
}

/// `num/den` with `gcd(num, den) = 1` and `den` monic.
///
/// Every constructor goes through [`RatFunc::normalize`] (or an operation
/// that provably preserves the canonical form), so two rational functions
/// are equal iff their coefficient vectors are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn normalize(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let field = den.field();
        if num.is_zero() {
            return Ok(RatFunc::from_poly(Poly::zero(field)));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            let div = |p: &Poly| p.exact_div(&g).map(|q| q.expect("gcd divides"));
            (div(&num)?, div(&den)?)
        };
        Ok(Self::make_monic(num, den))
    }

    /// Scale a coprime pair so the denominator is monic.
    fn make_monic(num: Poly, den: Poly) -> RatFunc {
        let lead = den.lead().expect("nonzero denominator");
        if lead.is_one() {
            return RatFunc { num, den };
        }
        let inv = lead.inv().expect("nonzero lead");
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        let field = p.field();
        RatFunc {
            num: p,
            den: Poly::one(field),
        }
    }

    pub fn constant(c: KNum) -> RatFunc {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero(field: RingId) -> RatFunc {
        Self::from_poly(Poly::zero(field))
    }

    pub fn one(field: RingId) -> RatFunc {
        Self::from_poly(Poly::one(field))
    }

    /// The identity map `x`.
    pub fn identity(field: RingId) -> RatFunc {
        Self::from_poly(Poly::x(field))
    }

    pub fn field(&self) -> RingId {
        self.den.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn as_constant(&self) -> Option<KNum> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &KNum) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.field());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            return Self::normalize(self.num.add(&other.num), self.den.clone()).expect("nonzero den");
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::normalize(num, self.den.mul(&other.den)).expect("nonzero den")
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    /// Product with cross cancellation, so only the small gcds
    /// `gcd(a, d)` and `gcd(c, b)` are ever computed for `(a/b)·(c/d)`.
    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero(self.field());
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let cancel = |p: &Poly, g: &Poly| {
            if g.is_one() {
                p.clone()
            } else {
                p.exact_div(g).expect("nonzero").expect("gcd divides")
            }
        };
        let num = cancel(&self.num, &g1).mul(&cancel(&other.num, &g2));
        let den = cancel(&self.den, &g2).mul(&cancel(&other.den, &g1));
        Self::make_monic(num, den)
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::make_monic(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, k: i64) -> Result<RatFunc> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        // powers of a coprime pair stay coprime
        Ok(Self::make_monic(base.num.pow(e), base.den.pow(e)))
    }

    pub fn derivative(&self) -> RatFunc {
        let num = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        Self::normalize(num, self.den.mul(&self.den)).expect("nonzero den")
    }

    /// `self ∘ inner`, refusing compositions of degree above `budget`.
    ///
    /// Both sides are homogenised: with `self = P/Q`, `n = deg self` and
    /// `inner = U/V`, the result is `Σ pⱼ UʲVⁿ⁻ʲ / Σ qⱼ UʲVⁿ⁻ʲ`. A common
    /// root of the two sums would be a common zero of the coprime binary
    /// forms `P(s,t)`, `Q(s,t)` at `(U(x₀), V(x₀)) ≠ (0, 0)`, so the
    /// result is already reduced and only needs a monic denominator.
    pub fn compose(&self, inner: &RatFunc, budget: DegreeBudget) -> Result<RatFunc> {
        budget.check(self.degree() as u128 * inner.degree() as u128)?;
        let field = self.field();
        if self.is_constant() {
            return Ok(self.clone());
        }
        let n = self.degree();
        let (outer, _) = IntPoly::lift_all(field, &[&self.num, &self.den]);
        let (gv, _) = IntPoly::lift_all(field, &[&inner.num, &inner.den]);
        let (p, q) = (&outer[0], &outer[1]);
        let (u, v) = (&gv[0], &gv[1]);

        let powers = |base: &IntPoly| {
            let mut out = vec![IntPoly::one(field)];
            for j in 1..=n {
                let next = out[j - 1].mul(base);
                out.push(next);
            }
            out
        };
        let upow = powers(u);
        let vpow = powers(v);

        let zero = BigInt::zero();
        let coef = |poly: &IntPoly, j: usize| -> (BigInt, BigInt) {
            if j < poly.len() {
                (poly.re[j].clone(), poly.im[j].clone())
            } else {
                (zero.clone(), zero.clone())
            }
        };
        let mut num = IntPoly::zero(field);
        let mut den = IntPoly::zero(field);
        for j in 0..=n {
            let (pr, pi) = coef(p, j);
            let (qr, qi) = coef(q, j);
            if pr.is_zero() && pi.is_zero() && qr.is_zero() && qi.is_zero() {
                continue;
            }
            let term = upow[j].mul(&vpow[n - j]);
            num.add_scaled(&pr, &pi, &term);
            den.add_scaled(&qr, &qi, &term);
        }
        if den.is_zero() {
            return Err(Error::ConstantPole);
        }
        // divide through by the leading coefficient of den: c/l = c·conj(l)/N(l)
        let (lr, li) = den.lead().map(|(a, b)| (a.clone(), b.clone())).expect("nonzero");
        let conj_im = -li.clone();
        let norm = &lr * &lr + BigInt::from(field.d()) * &li * &li;
        let num = num.scale(&lr, &conj_im).to_poly(&norm);
        let den = den.scale(&lr, &conj_im).to_poly(&norm);
        debug_assert!(den.is_monic());
        Ok(RatFunc { num, den })
    }

    /// `k`-fold self-composition (`k = 0` gives the identity).
    pub fn iterate(&self, k: u32, budget: DegreeBudget) -> Result<RatFunc> {
        budget.check((self.degree() as u128).saturating_pow(k))?;
        let mut acc = RatFunc::identity(self.field());
        for _ in 0..k {
            acc = self.compose(&acc, budget)?;
        }
        Ok(acc)
    }

    /// Value at a finite point; a pole gives `Infinity`.
    pub fn eval(&self, x: &KNum) -> P1Point {
        let d = self.den.eval(x);
        if d.is_zero() {
            return P1Point::Infinity;
        }
        P1Point::Finite(&self.num.eval(x) / &d)
    }

    /// Value at a point of ℙ¹, including ∞ ↦ ratio of leading terms.
    pub fn eval_p1(&self, pt: &P1Point) -> P1Point {
        match pt {
            P1Point::Finite(x) => self.eval(x),
            P1Point::Infinity => {
                let (dn, dd) = (self.num.deg(), self.den.deg());
                let field = self.field();
                if self.num.is_zero() || dn < dd {
                    P1Point::Finite(KNum::zero(field))
                } else if dn > dd {
                    P1Point::Infinity
                } else {
                    P1Point::Finite(self.num.lead().expect("nonzero").clone())
                }
            }
        }
    }

    /// Every coefficient (numerator then denominator), lowest degree first.
    pub fn coefficient_arrays(&self) -> (Vec<CoeffPair>, Vec<CoeffPair>) {
        let dump = |p: &Poly| p.coeffs().iter().map(|c| (c.re().clone(), c.im().clone())).collect();
        (dump(&self.num), dump(&self.den))
    }
}

impl fmt::Display for RatFunc {
    /// `num` alone when the denominator is 1, otherwise `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests;
