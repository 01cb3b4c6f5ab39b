//! Known K-rational points on the two standard curves.

use crate::ecurve::{Curve, Point};
use crate::kfield::KNum;
use crate::qring::RingId;

fn k(field: RingId, u: (i64, i64), v: (i64, i64)) -> KNum {
    &KNum::from_ratio(field, u.0, u.1) + &(&KNum::sqrt_minus_d(field) * &KNum::from_ratio(field, v.0, v.1))
}

fn n(field: RingId, a: i64) -> KNum {
    KNum::from_int(field, a)
}

/// Curated points on `y² = x³ + x` or `y² = x³ + 1`; every other curve
/// gets only `∞`. Each point is checked against the curve equation here,
/// so a typo fails loudly instead of producing a bogus orbit.
pub fn points(c: &Curve) -> Vec<Point> {
    let field = c.field();
    let mut pts = vec![Point::Infinity];
    if *c == Curve::standard(field) {
        let aff = |x: KNum, y: KNum| Point::affine(x, y);
        match field {
            RingId::Gaussian => {
                let i = KNum::sqrt_minus_d(field);
                pts.push(aff(n(field, 0), n(field, 0)));
                pts.push(aff(i.clone(), n(field, 0)));
                pts.push(aff(-&i, n(field, 0)));
            }
            RingId::Eisenstein => {
                for y in [1, -1] {
                    pts.push(aff(n(field, 0), n(field, y)));
                }
                pts.push(aff(n(field, -1), n(field, 0)));
                for y in [3, -3] {
                    pts.push(aff(n(field, 2), n(field, y)));
                    for s in [1, -1] {
                        pts.push(aff(k(field, (-1, 1), (s, 1)), n(field, y)));
                    }
                }
                for s in [1, -1] {
                    pts.push(aff(k(field, (1, 2), (s, 2)), n(field, 0)));
                }
            }
        }
    }
    for p in &pts {
        assert!(c.contains(p), "fixture {p} is not on {c}");
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(points(&Curve::standard(RingId::Gaussian)).len(), 4);
        assert_eq!(points(&Curve::standard(RingId::Eisenstein)).len(), 12);
        let other = Curve::gaussian(KNum::from_int(RingId::Gaussian, 2)).unwrap();
        assert_eq!(points(&other), vec![Point::Infinity]);
    }

    #[test]
    fn points_are_distinct() {
        for ring in RingId::ALL {
            let pts = points(&Curve::standard(ring));
            let set: std::collections::HashSet<_> = pts.iter().collect();
            assert_eq!(set.len(), pts.len());
        }
    }
}
