//! Candidate distances at which the free-space topology can change.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::curve::{Curve, Dim, Point};
use crate::error::{Error, Result};
use crate::numeric::{Dist, Rational, Rational128};

/// Sorted, deduplicated, always containing zero.
pub fn critical_values(p: &Curve, q: &Curve) -> Result<Vec<Dist>> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim().get(), q.dim().get()));
    }
    match p.dim() {
        Dim::One => Ok(critical_1d(p, q)),
        Dim::Two => critical_2d(p, q),
    }
}

/// In 1D every event is a cross distance between coordinates or half an
/// intra-curve distance, so distinct coordinates suffice.
fn critical_1d(p: &Curve, q: &Curve) -> Vec<Dist> {
    let ps: BTreeSet<Rational> = p.coords().iter().copied().collect();
    let qs: BTreeSet<Rational> = q.coords().iter().copied().collect();
    let mut out: BTreeSet<Rational> = BTreeSet::new();
    out.insert(Rational::zero());
    for a in &ps {
        for b in &qs {
            out.insert((a - b).abs());
        }
    }
    let half = Rational::new(1, 2);
    for set in [&ps, &qs] {
        let v: Vec<&Rational> = set.iter().collect();
        for (k, a) in v.iter().enumerate() {
            for b in &v[k + 1..] {
                out.insert((*b - *a) * half);
            }
        }
    }
    out.into_iter().map(Dist::from_rational).collect()
}

fn big(r: Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

struct BigPt {
    x: BigRational,
    y: BigRational,
}

impl BigPt {
    fn of(p: Point) -> BigPt {
        BigPt { x: big(p.x), y: big(p.y) }
    }
}

fn dist2(a: &BigPt, b: &BigPt) -> BigRational {
    let dx = &a.x - &b.x;
    let dy = &a.y - &b.y;
    &dx * &dx + &dy * &dy
}

fn to_dist(v: BigRational) -> Result<Dist> {
    let n = v.numer().to_i128().ok_or(Error::TooLarge)?;
    let d = v.denom().to_i128().ok_or(Error::TooLarge)?;
    Dist::from_squared(Rational128::new(n, d))
}

/// Squared distance from `p` to segment `ab`.
fn point_segment(p: &BigPt, a: &BigPt, b: &BigPt) -> BigRational {
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    let len2 = &dx * &dx + &dy * &dy;
    if len2.is_zero() {
        return dist2(p, a);
    }
    let t = ((&p.x - &a.x) * &dx + (&p.y - &a.y) * &dy) / &len2;
    if !t.is_positive() {
        return dist2(p, a);
    }
    if t >= BigRational::from_integer(1.into()) {
        return dist2(p, b);
    }
    let foot = BigPt { x: &a.x + &t * &dx, y: &a.y + &t * &dy };
    dist2(p, &foot)
}

fn critical_2d(p: &Curve, q: &Curve) -> Result<Vec<Dist>> {
    let ps: Vec<BigPt> = p.vertices().map(BigPt::of).collect();
    let qs: Vec<BigPt> = q.vertices().map(BigPt::of).collect();
    let mut out: BTreeSet<BigRational> = BTreeSet::new();
    out.insert(BigRational::zero());
    for a in &ps {
        for b in &qs {
            out.insert(dist2(a, b));
        }
    }
    for (pts, other) in [(&ps, &qs), (&qs, &ps)] {
        for w in other.windows(2) {
            for v in pts.iter() {
                out.insert(point_segment(v, &w[0], &w[1]));
            }
            // a point on the edge equidistant from two vertices of the other curve
            for (k, a) in pts.iter().enumerate() {
                for b in &pts[k + 1..] {
                    if let Some(d) = bisector_event(a, b, &w[0], &w[1]) {
                        out.insert(d);
                    }
                }
            }
        }
        // half intra-curve distances cover bisector events on degenerate edges
        for (k, a) in pts.iter().enumerate() {
            for b in &pts[k + 1..] {
                out.insert(dist2(a, b) / BigRational::from_integer(4.into()));
            }
        }
    }
    out.into_iter().map(to_dist).collect()
}

/// Squared distance from `a` to the point of segment `st` on the bisector of `ab`.
fn bisector_event(a: &BigPt, b: &BigPt, s: &BigPt, t: &BigPt) -> Option<BigRational> {
    let nx = &b.x - &a.x;
    let ny = &b.y - &a.y;
    let two = BigRational::from_integer(2.into());
    let mx = (&a.x + &b.x) / &two;
    let my = (&a.y + &b.y) / &two;
    let dx = &t.x - &s.x;
    let dy = &t.y - &s.y;
    let den = &dx * &nx + &dy * &ny;
    if den.is_zero() {
        return None;
    }
    let lambda = ((&mx - &s.x) * &nx + (&my - &s.y) * &ny) / den;
    if lambda.is_negative() || lambda > BigRational::from_integer(1.into()) {
        return None;
    }
    let x = BigPt { x: &s.x + &lambda * &dx, y: &s.y + &lambda * &dy };
    Some(dist2(a, &x))
}
