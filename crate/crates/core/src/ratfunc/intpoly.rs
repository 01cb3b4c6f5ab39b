//! Polynomials over ℤ[√−d], used for the heavy multiplications.
//!
//! Arithmetic on `Vec<KNum>` pays a rational gcd per operation. Clearing a
//! common denominator first and multiplying integer polynomials by
//! Kronecker substitution keeps compositions of degree several hundred fast.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::kfield::KNum;
use crate::qring::RingId;

use super::poly::Poly;

/// Schoolbook is faster than packing below this length.
const KRONECKER_THRESHOLD: usize = 12;

/// `Σ (re[k] + im[k]·√−d) x^k`, with `re` and `im` of equal length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IntPoly {
    pub field: RingId,
    pub re: Vec<BigInt>,
    pub im: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero(field: RingId) -> Self {
        IntPoly {
            field,
            re: Vec::new(),
            im: Vec::new(),
        }
    }

    pub fn one(field: RingId) -> Self {
        IntPoly {
            field,
            re: vec![BigInt::one()],
            im: vec![BigInt::zero()],
        }
    }

    pub fn len(&self) -> usize {
        self.re.len()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_empty()
    }

    fn trim(&mut self) {
        while let (Some(r), Some(i)) = (self.re.last(), self.im.last()) {
            if r.is_zero() && i.is_zero() {
                self.re.pop();
                self.im.pop();
            } else {
                break;
            }
        }
    }

    /// Write several polynomials over a common denominator:
    /// `polys[j] = out[j] / den`.
    pub fn lift_all(field: RingId, polys: &[&Poly]) -> (Vec<IntPoly>, BigInt) {
        let mut den = BigInt::one();
        for p in polys {
            for c in p.coeffs() {
                den = den.lcm(c.re().denom());
                den = den.lcm(c.im().denom());
            }
        }
        let scale = |r: &BigRational| r.numer() * (&den / r.denom());
        let out = polys
            .iter()
            .map(|p| IntPoly {
                field,
                re: p.coeffs().iter().map(|c| scale(c.re())).collect(),
                im: p.coeffs().iter().map(|c| scale(c.im())).collect(),
            })
            .collect();
        (out, den)
    }

    /// `self / den` as a polynomial over K.
    pub fn to_poly(&self, den: &BigInt) -> Poly {
        let coeffs = self
            .re
            .iter()
            .zip(&self.im)
            .map(|(r, i)| {
                KNum::new(
                    self.field,
                    BigRational::new(r.clone(), den.clone()),
                    BigRational::new(i.clone(), den.clone()),
                )
            })
            .collect();
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn lead(&self) -> Option<(&BigInt, &BigInt)> {
        Some((self.re.last()?, self.im.last()?))
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero(self.field);
        }
        let d = BigInt::from(self.field.d());
        // (a + b s)(c + e s) = (ac − d·be) + ((a+b)(c+e) − ac − be) s
        let ac = conv(&self.re, &other.re);
        let be = conv(&self.im, &other.im);
        let sum_l: Vec<BigInt> = self.re.iter().zip(&self.im).map(|(a, b)| a + b).collect();
        let sum_r: Vec<BigInt> = other.re.iter().zip(&other.im).map(|(a, b)| a + b).collect();
        let mixed = conv(&sum_l, &sum_r);
        let re = ac.iter().zip(&be).map(|(x, y)| x - &d * y).collect();
        let im = mixed
            .into_iter()
            .zip(ac.iter().zip(&be))
            .map(|(m, (x, y))| m - x - y)
            .collect();
        let mut out = IntPoly {
            field: self.field,
            re,
            im,
        };
        out.trim();
        out
    }

    /// `self += c · other` for a scalar `c = (c_re + c_im·√−d)`.
    pub fn add_scaled(&mut self, c_re: &BigInt, c_im: &BigInt, other: &IntPoly) {
        if c_re.is_zero() && c_im.is_zero() {
            return;
        }
        let d = BigInt::from(self.field.d());
        if self.len() < other.len() {
            self.re.resize(other.len(), BigInt::zero());
            self.im.resize(other.len(), BigInt::zero());
        }
        for k in 0..other.len() {
            let (a, b) = (&other.re[k], &other.im[k]);
            self.re[k] += c_re * a - &d * (c_im * b);
            self.im[k] += c_re * b + c_im * a;
        }
        self.trim();
    }

    /// Multiply every coefficient by the scalar `c_re + c_im·√−d`.
    pub fn scale(&self, c_re: &BigInt, c_im: &BigInt) -> IntPoly {
        let mut out = IntPoly::zero(self.field);
        out.add_scaled(c_re, c_im, self);
        out
    }
}

fn conv_schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Integer polynomial product, `len = a.len() + b.len() - 1`.
fn conv(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) < KRONECKER_THRESHOLD {
        return conv_schoolbook(a, b);
    }
    kronecker(a, b)
}

fn max_bits(a: &[BigInt]) -> u64 {
    a.iter().map(|x| x.bits()).max().unwrap_or(0)
}

/// OR the bits of `value` into `dst` starting at bit `offset`.
fn write_bits(dst: &mut [u64], offset: u64, value: &BigUint) {
    let word = (offset / 64) as usize;
    let shift = offset % 64;
    for (k, digit) in value.iter_u64_digits().enumerate() {
        dst[word + k] |= digit << shift;
        if shift != 0 {
            let hi = digit >> (64 - shift);
            if hi != 0 {
                dst[word + k + 1] |= hi;
            }
        }
    }
}

/// Read `width` bits of `src` starting at bit `offset`.
fn read_bits(src: &[u64], offset: u64, width: u64) -> BigUint {
    let n_words = width.div_ceil(64) as usize;
    let word = (offset / 64) as usize;
    let shift = offset % 64;
    let get = |i: usize| src.get(i).copied().unwrap_or(0);
    let mut out = Vec::with_capacity(n_words);
    for k in 0..n_words {
        let lo = get(word + k) >> shift;
        let hi = if shift == 0 {
            0
        } else {
            get(word + k + 1) << (64 - shift)
        };
        out.push(lo | hi);
    }
    let extra = n_words as u64 * 64 - width;
    if extra > 0 {
        let last = out.last_mut().unwrap();
        *last &= u64::MAX >> extra;
    }
    BigUint::from_slice(
        &out.iter()
            .flat_map(|w| [*w as u32, (*w >> 32) as u32])
            .collect::<Vec<u32>>(),
    )
}

/// Evaluate at `x = 2^w` (signed coefficients, `w` bits per slot).
fn pack(a: &[BigInt], w: u64) -> BigInt {
    let words = ((a.len() as u64 * w) / 64 + 2) as usize;
    let mut pos = vec![0u64; words];
    let mut neg = vec![0u64; words];
    for (i, x) in a.iter().enumerate() {
        let dst = if x.sign() == Sign::Minus { &mut neg } else { &mut pos };
        write_bits(dst, i as u64 * w, x.magnitude());
    }
    let to_int = |v: Vec<u64>| {
        let digits: Vec<u32> = v.iter().flat_map(|w| [*w as u32, (*w >> 32) as u32]).collect();
        BigInt::from_biguint(Sign::Plus, BigUint::new(digits))
    };
    to_int(pos) - to_int(neg)
}

fn kronecker(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len() + b.len() - 1;
    let len_bits = 64 - (a.len().min(b.len()) as u64).leading_zeros() as u64;
    // every |c_k| < 2^(w-1)
    let w = max_bits(a) + max_bits(b) + len_bits + 2;
    let prod = pack(a, w) * pack(b, w);

    // Adding 2^(w-1) to each slot makes all digits non-negative, so the
    // coefficients can be read off without borrows.
    let words = ((n as u64 * w) / 64 + 2) as usize;
    let mut offset = vec![0u64; words];
    let half = BigUint::one() << (w - 1);
    for k in 0..n {
        write_bits(&mut offset, k as u64 * w, &half);
    }
    let offset_int = BigInt::from_biguint(
        Sign::Plus,
        BigUint::new(offset.iter().flat_map(|w| [*w as u32, (*w >> 32) as u32]).collect()),
    );
    let shifted = (prod + offset_int)
        .to_biguint()
        .expect("offset makes product non-negative");
    let digits: Vec<u64> = shifted.iter_u64_digits().collect();
    let half = BigInt::from_biguint(Sign::Plus, half);
    (0..n)
        .map(|k| BigInt::from_biguint(Sign::Plus, read_bits(&digits, k as u64 * w, w)) - &half)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big_vec() -> impl Strategy<Value = Vec<BigInt>> {
        prop::collection::vec(
            prop_oneof![
                any::<i64>().prop_map(BigInt::from),
                (any::<i64>(), any::<u64>(), any::<u64>())
                    .prop_map(|(a, b, c)| BigInt::from(a) * BigInt::from(b) * BigInt::from(c)),
                Just(BigInt::zero()),
            ],
            1..60,
        )
    }

    proptest! {
        #[test]
        fn kronecker_matches_schoolbook(a in big_vec(), b in big_vec()) {
            prop_assert_eq!(kronecker(&a, &b), conv_schoolbook(&a, &b));
        }
    }

    #[test]
    fn bit_io_round_trip() {
        let v = BigUint::from(0xdead_beef_1234_5678u64) * BigUint::from(u64::MAX);
        let mut buf = vec![0u64; 8];
        write_bits(&mut buf, 77, &v);
        assert_eq!(read_bits(&buf, 77, v.bits()), v);
    }

    #[test]
    fn complex_product() {
        // (1 + s x)(1 - s x) = 1 + d x^2 with s^2 = -d
        for field in RingId::ALL {
            let p = IntPoly {
                field,
                re: vec![1.into(), 0.into()],
                im: vec![0.into(), 1.into()],
            };
            let q = IntPoly {
                field,
                re: vec![1.into(), 0.into()],
                im: vec![0.into(), (-1).into()],
            };
            let r = p.mul(&q);
            assert_eq!(r.re, vec![1.into(), 0.into(), BigInt::from(field.d())]);
            assert!(r.im.iter().all(|x| x.is_zero()));
        }
    }
}
