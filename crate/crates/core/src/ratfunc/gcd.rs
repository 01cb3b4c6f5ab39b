//! Polynomial gcd over K.
//!
//! The modular path reduces both inputs modulo a prime of ℤ[√−d] whose
//! residue field is 𝔽ₚ. When the leading coefficients survive reduction,
//! `deg gcd(ā, b̄) ≥ deg gcd(a, b)`, so a trivial modular gcd proves
//! coprimality outright. Otherwise the monic gcd is rebuilt from both
//! conjugate reductions of several primes by CRT and rational
//! reconstruction, and accepted only after exact trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::kfield::KNum;

use super::modular::{add_mod, bigint_mod, inv_mod, knum_mod, mul_mod, poly_gcd_mod, split_prime, sub_mod};
use super::poly::Poly;

/// Below this degree plain Euclid is cheaper than reducing mod p.
const EUCLID_MAX_DEGREE: usize = 4;
/// Give up on the modular route after this many primes.
const MAX_PRIMES: usize = 400;

pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.deg() == 0 || b.deg() == 0 {
        return Poly::one(a.field());
    }
    if a.deg().max(b.deg()) <= EUCLID_MAX_DEGREE {
        return gcd_euclid(a, b);
    }
    gcd_modular(a, b).unwrap_or_else(|| gcd_euclid(a, b))
}

/// Classical Euclid with monic remainders.
pub fn gcd_euclid(a: &Poly, b: &Poly) -> Poly {
    let mut r0 = a.monic();
    let mut r1 = b.monic();
    while !r1.is_zero() {
        let (_, r) = r0.divrem(&r1).expect("nonzero divisor");
        r0 = r1;
        r1 = r.monic();
    }
    r0.monic()
}

fn reduce(p: &Poly, prime: u64, s: u64) -> Option<Vec<u64>> {
    let out: Option<Vec<u64>> = p.coeffs().iter().map(|c| knum_mod(c, prime, s)).collect();
    let out = out?;
    // the leading coefficient must survive
    if *out.last()? == 0 {
        return None;
    }
    Some(out)
}

struct Accumulator {
    degree: usize,
    modulus: BigInt,
    re: Vec<BigInt>,
    im: Vec<BigInt>,
    last: Option<Poly>,
}

fn crt(old: &BigInt, modulus: &BigInt, r: u64, p: u64) -> BigInt {
    let old_mod = bigint_mod(old, p);
    let m_mod = bigint_mod(modulus, p);
    let t = mul_mod(sub_mod(r, old_mod, p), inv_mod(m_mod, p), p);
    old + modulus * BigInt::from(t)
}

/// Smallest-height `n/d ≡ r (mod m)`, if one exists with `|n|, d ≤ √(m/2)`.
fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

fn reconstruct(acc: &Accumulator, a: &Poly) -> Option<Poly> {
    let field = a.field();
    let coeffs: Option<Vec<KNum>> = acc
        .re
        .iter()
        .zip(&acc.im)
        .map(|(u, v)| {
            Some(KNum::new(
                field,
                rational_reconstruct(u, &acc.modulus)?,
                rational_reconstruct(v, &acc.modulus)?,
            ))
        })
        .collect();
    Some(Poly::from_coeffs(field, coeffs?))
}

fn gcd_modular(a: &Poly, b: &Poly) -> Option<Poly> {
    let field = a.field();
    let mut acc: Option<Accumulator> = None;
    for idx in 0..MAX_PRIMES {
        let sp = split_prime(idx);
        let p = sp.p;
        let s = sp.sqrt_minus_d(field);
        let images = [s, p - s].map(|t| Some((reduce(a, p, t)?, reduce(b, p, t)?)));
        let [Some((a1, b1)), Some((a2, b2))] = images else {
            continue;
        };
        let g1 = poly_gcd_mod(&a1, &b1, p);
        let g2 = poly_gcd_mod(&a2, &b2, p);
        if g1.len() == 1 || g2.len() == 1 {
            // a trivial gcd at one good prime ideal is a proof
            return Some(Poly::one(field));
        }
        if g1.len() != g2.len() {
            continue;
        }
        let degree = g1.len() - 1;

        // u = (g1 + g2)/2, v = (g1 − g2)/(2s)
        let inv2 = inv_mod(2, p);
        let inv2s = inv_mod(mul_mod(2, s, p), p);
        let us: Vec<u64> = g1
            .iter()
            .zip(&g2)
            .map(|(&x, &y)| mul_mod(add_mod(x, y, p), inv2, p))
            .collect();
        let vs: Vec<u64> = g1
            .iter()
            .zip(&g2)
            .map(|(&x, &y)| mul_mod(sub_mod(x, y, p), inv2s, p))
            .collect();

        match &mut acc {
            Some(st) if st.degree < degree => continue,
            Some(st) if st.degree == degree => {
                for (k, (&u, &v)) in us.iter().zip(&vs).enumerate() {
                    st.re[k] = crt(&st.re[k], &st.modulus, u, p);
                    st.im[k] = crt(&st.im[k], &st.modulus, v, p);
                }
                st.modulus *= BigInt::from(p);
            }
            _ => {
                acc = Some(Accumulator {
                    degree,
                    modulus: BigInt::from(p),
                    re: us.into_iter().map(BigInt::from).collect(),
                    im: vs.into_iter().map(BigInt::from).collect(),
                    last: None,
                });
            }
        }

        let st = acc.as_mut().expect("accumulator set above");
        let Some(candidate) = reconstruct(st, a) else {
            continue;
        };
        // only pay for trial division once the reconstruction has settled
        if st.last.as_ref() == Some(&candidate) {
            let divides = |f: &Poly| matches!(f.exact_div(&candidate), Ok(Some(_)));
            if divides(a) && divides(b) {
                return Some(candidate);
            }
        }
        st.last = Some(candidate);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qring::RingId;
    use proptest::prelude::*;

    fn knum(field: RingId) -> impl Strategy<Value = KNum> {
        (-9i64..9, 1i64..5, -9i64..9, 1i64..5).prop_map(move |(a, b, c, d)| {
            KNum::new(
                field,
                BigRational::new(a.into(), b.into()),
                BigRational::new(c.into(), d.into()),
            )
        })
    }

    fn poly(field: RingId, max_len: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec(knum(field), 1..max_len).prop_map(move |c| Poly::from_coeffs(field, c))
    }

    fn triple() -> impl Strategy<Value = (Poly, Poly, Poly)> {
        prop_oneof![Just(RingId::Gaussian), Just(RingId::Eisenstein)]
            .prop_flat_map(|f| (poly(f, 8), poly(f, 8), poly(f, 6)))
    }

    #[test]
    fn reconstruction_of_small_rationals() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(999_983u64);
        let target = BigRational::new((-22).into(), 7.into());
        let ext = BigInt::from(7).extended_gcd(&m);
        let r = (BigInt::from(-22) * ext.x).mod_floor(&m);
        assert_eq!(rational_reconstruct(&r, &m), Some(target));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn modular_matches_euclid((f, g, h) in triple()) {
            let a = f.mul(&h);
            let b = g.mul(&h);
            prop_assume!(!a.is_zero() && !b.is_zero());
            let expected = gcd_euclid(&a, &b);
            if let Some(got) = gcd_modular(&a, &b) {
                prop_assert_eq!(got, expected.clone());
            }
            prop_assert_eq!(gcd(&a, &b), expected);
        }
    }

    #[test]
    fn large_common_factor() {
        let f = RingId::Gaussian;
        let i = KNum::sqrt_minus_d(f);
        let lin = |c: KNum| Poly::from_coeffs(f, vec![c, KNum::one(f)]);
        let mut common = Poly::one(f);
        for k in 1..=6 {
            common = common.mul(&lin(&KNum::from_ratio(f, k, 3) + &(&i * &KNum::from_int(f, k * k))));
        }
        let a = common.mul(&Poly::from_ints(f, &[1, 2, 3, 4, 5, 6, 7]));
        let b = common.mul(&Poly::from_ints(f, &[-7, 0, 11, 0, 1]));
        assert_eq!(gcd_modular(&a, &b), Some(common.monic()));
    }
}
