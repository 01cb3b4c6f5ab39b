//! Arithmetic modulo word-size primes that split in both ℚ(i) and ℚ(√−3).
//!
//! A prime `p ≡ 1 (mod 12)` has square roots of −1 and −3 in 𝔽ₚ, so
//! `√−d ↦ ±s` gives two ring maps ℤ[√−d][1/den] → 𝔽ₚ. The gcd code uses
//! them to prove coprimality cheaply and to reconstruct nontrivial gcds.

use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::kfield::KNum;
use crate::qring::RingId;

#[derive(Debug, Clone, Copy)]
pub(crate) struct SplitPrime {
    pub p: u64,
    sqrt_m1: u64,
    sqrt_m3: u64,
}

impl SplitPrime {
    /// A fixed square root of −d modulo p.
    pub fn sqrt_minus_d(&self, field: RingId) -> u64 {
        match field {
            RingId::Gaussian => self.sqrt_m1,
            RingId::Eisenstein => self.sqrt_m3,
        }
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Tonelli–Shanks; `a` must be a nonzero quadratic residue.
fn sqrt_mod(a: u64, p: u64) -> u64 {
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2u64;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

fn primes() -> &'static Mutex<Vec<SplitPrime>> {
    static PRIMES: OnceLock<Mutex<Vec<SplitPrime>>> = OnceLock::new();
    PRIMES.get_or_init(|| Mutex::new(Vec::new()))
}

/// The `idx`-th prime `p ≡ 1 (mod 12)` counting down from 2⁶².
pub(crate) fn split_prime(idx: usize) -> SplitPrime {
    let mut list = primes().lock().unwrap_or_else(|e| e.into_inner());
    while list.len() <= idx {
        let start = list.last().map_or((1u64 << 62) + 1, |sp| sp.p);
        // largest candidate ≡ 1 mod 12 strictly below `start`
        let mut n = start - 1;
        n -= (n + 11) % 12;
        while !is_prime(n) {
            n -= 12;
        }
        list.push(SplitPrime {
            p: n,
            sqrt_m1: sqrt_mod(n - 1, n),
            sqrt_m3: sqrt_mod(n - 3, n),
        });
    }
    list[idx]
}

pub(crate) fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let r = (n.magnitude() % p).to_u64().expect("residue fits in u64");
    if n.sign() == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

fn ratio_mod(r: &BigRational, p: u64) -> Option<u64> {
    let d = bigint_mod(r.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul_mod(bigint_mod(r.numer(), p), inv_mod(d, p), p))
}

/// Image of `u + v√−d` under `√−d ↦ s`; `None` if a denominator vanishes.
pub(crate) fn knum_mod(x: &KNum, p: u64, s: u64) -> Option<u64> {
    let u = ratio_mod(x.re(), p)?;
    let v = ratio_mod(x.im(), p)?;
    Some(add_mod(u, mul_mod(v, s, p), p))
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Monic gcd in 𝔽ₚ[x] (coefficients lowest degree first).
pub(crate) fn poly_gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let lead_inv = inv_mod(*r1.last().unwrap(), p);
        // r0 mod r1, in place
        while r0.len() >= r1.len() {
            let shift = r0.len() - r1.len();
            let c = mul_mod(*r0.last().unwrap(), lead_inv, p);
            for (i, &bi) in r1.iter().enumerate() {
                let t = mul_mod(c, bi, p);
                r0[shift + i] = sub_mod(r0[shift + i], t, p);
            }
            debug_assert_eq!(*r0.last().unwrap(), 0);
            r0.pop();
            trim(&mut r0);
        }
        std::mem::swap(&mut r0, &mut r1);
    }
    if let Some(&lead) = r0.last() {
        let inv = inv_mod(lead, p);
        for c in r0.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    r0
}
