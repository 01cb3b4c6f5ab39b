//! Short Weierstrass curves with CM, exact points and the chord-tangent law.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::dynamics::PreperiodicPair;
use crate::endo::Endo;
use crate::error::{Error, Result};
use crate::kfield::KNum;
use crate::qring::{QuadInt, RingId};
use crate::ratfunc::Poly;

/// `y² = x³ + A·x + B` over ℚ(√−d), tagged with its CM order.
///
/// Gaussian curves have `B = 0` (j = 1728), Eisenstein curves `A = 0`
/// (j = 0); these are the families on which `[i]` and `[ρ]` act by the
/// simple formulas in [`crate::endo::cm_generator`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Curve {
    cm: RingId,
    a: KNum,
    b: KNum,
}

impl Curve {
    pub fn new(cm: RingId, a: KNum, b: KNum) -> Result<Curve> {
        if a.field() != cm {
            return Err(Error::RingMismatch(cm, a.field()));
        }
        if b.field() != cm {
            return Err(Error::RingMismatch(cm, b.field()));
        }
        let compatible = match cm {
            RingId::Gaussian => b.is_zero(),
            RingId::Eisenstein => a.is_zero(),
        };
        if !compatible {
            return Err(Error::IncompatibleCurve(cm));
        }
        let disc = &(&KNum::from_int(cm, 4) * &a.pow(3)) + &(&KNum::from_int(cm, 27) * &b.pow(2));
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(Curve { cm, a, b })
    }

    /// `y² = x³ + A·x`.
    pub fn gaussian(a: KNum) -> Result<Curve> {
        let f = a.field();
        Self::new(f, a, KNum::zero(f))
    }

    /// `y² = x³ + B`.
    pub fn eisenstein(b: KNum) -> Result<Curve> {
        let f = b.field();
        Self::new(f, KNum::zero(f), b)
    }

    /// `y² = x³ + x` for ℤ[i] and `y² = x³ + 1` for ℤ[ρ].
    pub fn standard(cm: RingId) -> Curve {
        let one = KNum::one(cm);
        let curve = match cm {
            RingId::Gaussian => Self::gaussian(one),
            RingId::Eisenstein => Self::eisenstein(one),
        };
        curve.expect("standard curves are nonsingular")
    }

    pub fn cm(&self) -> RingId {
        self.cm
    }

    pub fn field(&self) -> RingId {
        self.cm
    }

    pub fn a(&self) -> &KNum {
        &self.a
    }

    pub fn b(&self) -> &KNum {
        &self.b
    }

    /// `f(x) = x³ + A·x + B`.
    pub fn rhs_poly(&self) -> Poly {
        let f = self.cm;
        Poly::from_coeffs(f, vec![self.b.clone(), self.a.clone(), KNum::zero(f), KNum::one(f)])
    }

    pub fn rhs(&self, x: &KNum) -> KNum {
        &(&(&(x * x) * x) + &(&self.a * x)) + &self.b
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => x.field() == self.cm && y.field() == self.cm && y * y == self.rhs(x),
        }
    }

    fn check(&self, p: &Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::NotOnCurve)
        }
    }

    pub fn neg(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine { x: x.clone(), y: -y },
        }
    }

    /// Chord-tangent addition.
    pub fn add(&self, p: &Point, q: &Point) -> Result<Point> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &Point, q: &Point) -> Point {
        let (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) = (p, q) else {
            return if p.is_infinity() { q.clone() } else { p.clone() };
        };
        let lambda = if x1 != x2 {
            &(y2 - y1) / &(x2 - x1)
        } else if (y1 + y2).is_zero() {
            // P + (−P), including the vertical tangent at 2-torsion
            return Point::Infinity;
        } else {
            let f = self.cm;
            &(&(&KNum::from_int(f, 3) * &(x1 * x1)) + &self.a) / &(&KNum::from_int(f, 2) * y1)
        };
        let x3 = &(&(&lambda * &lambda) - x1) - x2;
        let y3 = &(&lambda * &(x1 - &x3)) - y1;
        Point::Affine { x: x3, y: y3 }
    }

    /// `[m]P` by double-and-add.
    pub fn scalar(&self, m: &BigInt, p: &Point) -> Result<Point> {
        self.check(p)?;
        let mut acc = Point::Infinity;
        let bits = m.abs();
        for i in (0..bits.bits()).rev() {
            acc = self.add_unchecked(&acc, &acc);
            if bits.bit(i) {
                acc = self.add_unchecked(&acc, p);
            }
        }
        Ok(if m.is_negative() { self.neg(&acc) } else { acc })
    }

    /// The action of θ on points: `(x, y) ↦ (−x, i·y)` or `(ζ₃·x, y)`.
    pub fn cm_action(&self, p: &Point) -> Result<Point> {
        self.check(p)?;
        Ok(match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => match self.cm {
                RingId::Gaussian => Point::Affine {
                    x: -x,
                    y: &KNum::sqrt_minus_d(self.cm) * y,
                },
                RingId::Eisenstein => Point::Affine {
                    x: &KNum::embed(&QuadInt::theta(self.cm)) * x,
                    y: y.clone(),
                },
            },
        })
    }

    /// `[a + bθ]P = [a]P + [b]([θ]P)` through point arithmetic alone.
    pub fn quadint_action(&self, w: &QuadInt, p: &Point) -> Result<Point> {
        if w.ring() != self.cm {
            return Err(Error::RingMismatch(self.cm, w.ring()));
        }
        let ap = self.scalar(w.a(), p)?;
        let bp = self.scalar(w.b(), &self.cm_action(p)?)?;
        self.add(&ap, &bp)
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = {}", self.rhs_poly())
    }
}

/// A point of `E(K)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine { x: KNum, y: KNum },
}

impl Point {
    pub fn affine(x: KNum, y: KNum) -> Point {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&KNum> {
        match self {
            Point::Infinity => None,
            Point::Affine { x, .. } => Some(x),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => f.write_str("inf"),
            Point::Affine { x, y } => write!(f, "{x},{y}"),
        }
    }
}

/// Outcome of following a point's forward orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Orbit {
    Preperiodic(PreperiodicPair),
    /// No repetition within this many applications of the map.
    Exhausted(usize),
}

/// Minimal `(n, k)` with `φ^{n+k}(P) = φ^n(P)`, found by exact iteration.
pub fn orbit_detect(c: &Curve, phi: &Endo, p: &Point, max_steps: usize) -> Result<Orbit> {
    c.check(p)?;
    let mut seen: HashMap<Point, usize> = HashMap::new();
    let mut cur = p.clone();
    seen.insert(cur.clone(), 0);
    for step in 1..=max_steps {
        cur = phi.eval_point(c, &cur)?;
        if let Some(&first) = seen.get(&cur) {
            return Ok(Orbit::Preperiodic(PreperiodicPair {
                n: first as u32,
                k: (step - first) as u32,
            }));
        }
        seen.insert(cur.clone(), step);
    }
    Ok(Orbit::Exhausted(max_steps))
}
