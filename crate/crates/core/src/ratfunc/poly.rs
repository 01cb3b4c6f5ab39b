use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::kfield::KNum;
use crate::qring::RingId;

use super::gcd;
use super::intpoly::IntPoly;

/// Dense univariate polynomial over K, lowest degree first.
///
/// Trailing zero coefficients are never stored, so the zero polynomial is
/// the empty vector and `degree()` is `None` for it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: RingId,
    coeffs: Vec<KNum>,
}

impl Poly {
    pub fn from_coeffs(field: RingId, mut coeffs: Vec<KNum>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        while coeffs.last().is_some_and(KNum::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    /// Build from integer coefficients, lowest degree first.
    pub fn from_ints(field: RingId, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| KNum::from_int(field, c)).collect())
    }

    pub fn zero(field: RingId) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: KNum) -> Self {
        Self::from_coeffs(c.field(), vec![c])
    }

    pub fn one(field: RingId) -> Self {
        Self::constant(KNum::one(field))
    }

    /// The polynomial `x`.
    pub fn x(field: RingId) -> Self {
        Self::monomial(KNum::one(field), 1)
    }

    pub fn monomial(c: KNum, k: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![KNum::zero(field); k];
        coeffs.push(c);
        Self::from_coeffs(field, coeffs)
    }

    pub fn field(&self) -> RingId {
        self.field
    }

    pub fn coeffs(&self) -> &[KNum] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> KNum {
        self.coeffs.get(k).cloned().unwrap_or_else(|| KNum::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with 0 for the zero polynomial.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Option<&KNum> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(KNum::is_one)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &KNum) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field);
        }
        Poly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        if self.coeffs.len().min(other.coeffs.len()) <= 2 {
            let mut out = vec![KNum::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
            for (i, a) in self.coeffs.iter().enumerate() {
                for (j, b) in other.coeffs.iter().enumerate() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
            return Poly::from_coeffs(self.field, out);
        }
        let (lifted, den) = IntPoly::lift_all(self.field, &[self, other]);
        lifted[0].mul(&lifted[1]).to_poly(&(&den * &den))
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.field);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let lead = divisor.lead().ok_or(Error::DivisionByZero)?;
        let lead_inv = lead.inv()?;
        let dn = divisor.coeffs.len();
        if self.coeffs.len() < dn {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![KNum::zero(self.field); rem.len() - dn + 1];
        for shift in (0..quot.len()).rev() {
            let top = &rem[shift + dn - 1];
            if top.is_zero() {
                continue;
            }
            let c = top * &lead_inv;
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = &rem[shift + i] - &(&c * b);
            }
            quot[shift] = c;
        }
        rem.truncate(dn - 1);
        Ok((Poly::from_coeffs(self.field, quot), Poly::from_coeffs(self.field, rem)))
    }

    /// `self / divisor` when the division is exact, `None` otherwise.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.divrem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Scale to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    /// Monic gcd; `gcd(f, 0) = monic(f)` and `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        gcd::gcd(self, other)
    }

    pub fn eval(&self, x: &KNum) -> KNum {
        let mut acc = KNum::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &KNum::from_int(self.field, k as i64))
            .collect();
        Poly::from_coeffs(self.field, coeffs)
    }
}

impl fmt::Display for Poly {
    /// Descending powers, e.g. `3*x^2 - (1 + sqrt(-1))*x + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            // A leading minus is pulled out only when the coefficient is a
            // single signed term.
            let negative = !c.is_compound() && (c.re().is_negative() || (c.re().is_zero() && c.im().is_negative()));
            let mag = if negative { -c } else { c.clone() };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let body = if mag.is_compound() {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            match k {
                0 => f.write_str(&body)?,
                _ => {
                    let xk = if k == 1 { "x".to_string() } else { format!("x^{k}") };
                    if mag.is_one() {
                        f.write_str(&xk)?;
                    } else {
                        write!(f, "{body}*{xk}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
