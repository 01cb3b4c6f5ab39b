//! The CM field ℚ(√−d), d ∈ {1, 3}.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qring::{QuadInt, RingId};

/// `u + v·√−d` with `u, v` exact rationals.
///
/// The field is named by the order it is the fraction field of, so
/// `RingId::Gaussian` is ℚ(√−1) and `RingId::Eisenstein` is ℚ(√−3).
/// `BigRational` keeps both parts in lowest terms, so equality is
/// componentwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KNum {
    field: RingId,
    u: BigRational,
    v: BigRational,
}

impl KNum {
    pub fn new(field: RingId, u: BigRational, v: BigRational) -> Self {
        KNum { field, u, v }
    }

    pub fn from_int(field: RingId, n: impl Into<BigInt>) -> Self {
        Self::new(field, BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_ratio(field: RingId, num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self::new(field, BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    pub fn zero(field: RingId) -> Self {
        Self::new(field, BigRational::zero(), BigRational::zero())
    }

    pub fn one(field: RingId) -> Self {
        Self::from_int(field, 1)
    }

    /// √−d itself.
    pub fn sqrt_minus_d(field: RingId) -> Self {
        Self::new(field, BigRational::zero(), BigRational::one())
    }

    pub fn field(&self) -> RingId {
        self.field
    }

    pub fn d(&self) -> u32 {
        self.field.d()
    }

    pub fn re(&self) -> &BigRational {
        &self.u
    }

    /// Coefficient of √−d.
    pub fn im(&self) -> &BigRational {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.u.is_one() && self.v.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    fn check(&self, other: &KNum) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.field, other.field))
        }
    }

    pub fn try_add(&self, other: &KNum) -> Result<KNum> {
        self.check(other)?;
        Ok(KNum::new(self.field, &self.u + &other.u, &self.v + &other.v))
    }

    pub fn try_sub(&self, other: &KNum) -> Result<KNum> {
        self.check(other)?;
        Ok(KNum::new(self.field, &self.u - &other.u, &self.v - &other.v))
    }

    pub fn try_mul(&self, other: &KNum) -> Result<KNum> {
        self.check(other)?;
        let d = BigRational::from_integer(BigInt::from(self.d()));
        let u = &self.u * &other.u - d * (&self.v * &other.v);
        let v = &self.u * &other.v + &self.v * &other.u;
        Ok(KNum::new(self.field, u, v))
    }

    pub fn try_div(&self, other: &KNum) -> Result<KNum> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn conj(&self) -> KNum {
        KNum::new(self.field, self.u.clone(), -&self.v)
    }

    /// Field norm `u² + d·v²`.
    pub fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(BigInt::from(self.d()));
        &self.u * &self.u + d * (&self.v * &self.v)
    }

    pub fn inv(&self) -> Result<KNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(KNum::new(self.field, &self.u / &n, -&self.v / &n))
    }

    pub fn scale(&self, r: &BigRational) -> KNum {
        KNum::new(self.field, &self.u * r, &self.v * r)
    }

    pub fn pow(&self, k: u32) -> KNum {
        let mut acc = KNum::one(self.field);
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

    /// Ring-homomorphic embedding of ℤ[i] / ℤ[ρ] into its fraction field.
    pub fn embed(q: &QuadInt) -> KNum {
        let field = q.ring();
        match field {
            RingId::Gaussian => KNum::new(
                field,
                BigRational::from_integer(q.a().clone()),
                BigRational::from_integer(q.b().clone()),
            ),
            // ρ = (−1 + √−3)/2
            RingId::Eisenstein => {
                let half_b = BigRational::new(q.b().clone(), BigInt::from(2));
                KNum::new(field, BigRational::from_integer(q.a().clone()) - &half_b, half_b)
            }
        }
    }

    /// Floating-point value, for debug printing only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let u = self.u.to_f64().unwrap_or(f64::NAN);
        let v = self.v.to_f64().unwrap_or(f64::NAN);
        (u, v * f64::from(self.d()).sqrt())
    }

    /// True when printing this value as a factor needs parentheses.
    pub fn is_compound(&self) -> bool {
        !self.u.is_zero() && !self.v.is_zero()
    }
}

impl Neg for &KNum {
    type Output = KNum;
    fn neg(self) -> KNum {
        KNum::new(self.field, -&self.u, -&self.v)
    }
}

impl Neg for KNum {
    type Output = KNum;
    fn neg(self) -> KNum {
        -&self
    }
}

// Operator forms panic on field mismatch and on division by zero.
macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&KNum> for &KNum {
            type Output = KNum;
            fn $m(self, rhs: &KNum) -> KNum {
                self.$try(rhs).expect(concat!("KNum ", stringify!($m)))
            }
        }
        impl $tr for KNum {
            type Output = KNum;
            fn $m(self, rhs: KNum) -> KNum {
                (&self).$m(&rhs)
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

fn fmt_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for KNum {
    /// `u + v*sqrt(-d)`, dropping whichever part is zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("sqrt(-{})", self.d());
        if self.v.is_zero() {
            return f.write_str(&fmt_ratio(&self.u));
        }
        let im = if self.v.abs().is_one() {
            root
        } else {
            format!("{}*{}", fmt_ratio(&self.v.abs()), root)
        };
        match (self.u.is_zero(), self.v.is_negative()) {
            (true, false) => f.write_str(&im),
            (true, true) => write!(f, "-{im}"),
            (false, false) => write!(f, "{} + {}", fmt_ratio(&self.u), im),
            (false, true) => write!(f, "{} - {}", fmt_ratio(&self.u), im),
        }
    }
}
