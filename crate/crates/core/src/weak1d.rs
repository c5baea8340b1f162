//! Linear-time weak Fréchet distance for 1D curves.
//!
//! Pipeline: canonicalize both curves (which does not change the weak
//! distance), cut each at an edge spanning its global minimum and maximum,
//! and run the greedy matching on the two halves.

use num_integer::Integer;
use num_traits::Zero;

use crate::curve::{between, Curve, Dim};
use crate::error::{domain, Error, Result};
use crate::numeric::Rational;

/// Scaled coordinates beyond this would overflow differences.
const LIMIT: i128 = 1 << 61;

/// A canonical 1D curve: no four consecutive vertices nest as
/// `p_a ≤ p_{a+2} ≤ p_{a+1} ≤ p_{a+3}` (or the mirrored pattern), and no
/// interior vertex lies between its neighbours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalCurve {
    curve: Curve,
}

impl CanonicalCurve {
    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn into_curve(self) -> Curve {
        self.curve
    }

    pub fn len(&self) -> usize {
        self.curve.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curve.is_empty()
    }

    /// Wraps a curve after checking it is canonical.
    pub fn try_from_curve(curve: Curve) -> Result<CanonicalCurve> {
        require_1d(&curve)?;
        if !is_canonical(curve.coords()) {
            return domain("curve is not canonical");
        }
        Ok(CanonicalCurve { curve })
    }
}

fn require_1d(c: &Curve) -> Result<()> {
    if c.dim() != Dim::One {
        return Err(Error::WrongDimension { expected: 1, found: c.dim().get() });
    }
    Ok(())
}

/// Whether a window `a, b, c, d` has the nested zigzag shape.
#[inline]
fn nested<T: PartialOrd>(a: T, b: T, c: T, d: T) -> bool {
    (a <= c && c <= b && b <= d) || (d <= b && b <= c && c <= a)
}

/// The 4-window predicate, checked literally over every window.
pub fn is_canonical<T: PartialOrd + Copy>(v: &[T]) -> bool {
    v.windows(4).all(|w| !nested(w[0], w[1], w[2], w[3]))
}

/// Stack scan: after each push, drop collinear middles and nested zigzags at
/// the top until neither applies. Every removal leaves the weak distance to
/// the input at zero, and windows below the top never change again.
fn canonicalize_values<T: PartialOrd + Copy>(v: &[T]) -> Vec<T> {
    let mut s: Vec<T> = Vec::with_capacity(v.len());
    for &x in v {
        s.push(x);
        loop {
            let k = s.len();
            if k >= 3 && between(s[k - 3], s[k - 2], s[k - 1]) {
                s.remove(k - 2);
                continue;
            }
            if k >= 4 && nested(s[k - 4], s[k - 3], s[k - 2], s[k - 1]) {
                s.drain(k - 3..k - 1);
                continue;
            }
            break;
        }
    }
    s
}

pub fn canonicalize(p: &Curve) -> Result<CanonicalCurve> {
    require_1d(p)?;
    let values = canonicalize_values(p.coords());
    Ok(CanonicalCurve { curve: Curve::new_1d(values)? })
}

/// Distance from `p` to the value interval of a segment with endpoints `a`, `b`.
pub fn point_segment_distance_1d(p: Rational, a: Rational, b: Rational) -> Rational {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    (lo - p).max(p - hi).max(Rational::zero())
}

#[inline]
fn dist_to_seg(p: i64, a: i64, b: i64) -> i64 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    (lo - p).max(p - hi).max(0)
}

/// Index of the first edge whose endpoints are the global minimum and maximum.
fn spanning_edge_index<T: PartialOrd + Copy>(v: &[T]) -> Option<usize> {
    let mut lo = v[0];
    let mut hi = v[0];
    for &x in v {
        if x < lo {
            lo = x;
        }
        if x > hi {
            hi = x;
        }
    }
    v.windows(2).position(|w| (w[0] == lo && w[1] == hi) || (w[0] == hi && w[1] == lo))
}

/// 1-based index `i` of the spanning edge `p_i p_{i+1}`.
pub fn find_spanning_edge(p: &CanonicalCurve) -> Result<usize> {
    if p.len() < 2 {
        return domain("a single-vertex curve has no edges");
    }
    match spanning_edge_index(p.curve.coords()) {
        Some(k) => Ok(k + 1),
        None => domain("no edge spans the global minimum and maximum"),
    }
}

/// Whether the last edge contains both a global minimum and maximum.
pub fn is_growing<T: PartialOrd + Copy>(v: &[T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let (a, b) = (v[v.len() - 2], v[v.len() - 1]);
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    v.iter().all(|&x| lo <= x && x <= hi)
}

/// The greedy sweep over two growing curves, in integer units.
///
/// When neither curve can advance within the current width, the cheaper
/// advance is taken. Always advancing along `P` first overestimates, e.g. on
/// `⟨1,3,0⟩, ⟨1,0,2⟩` it returns 2 where a width-1 path exists.
fn greedy(p: &[i64], q: &[i64]) -> i64 {
    let (np, nq) = (p.len(), q.len());
    let mut r = (p[0] - q[0]).abs();
    let (mut i, mut j) = (0usize, 0usize);
    // 0-based: the loop runs while i + 2 < |P| or j + 2 < |Q|
    while i + 2 < np || j + 2 < nq {
        let step_q = (j + 2 < nq).then(|| dist_to_seg(q[j + 1], p[i], p[i + 1]));
        let step_p = (i + 2 < np).then(|| dist_to_seg(p[i + 1], q[j], q[j + 1]));
        match (step_p, step_q) {
            (_, Some(cq)) if cq <= r => j += 1,
            (Some(cp), Some(cq)) if cq < cp => {
                r = cq;
                j += 1;
            }
            (Some(cp), _) => {
                r = r.max(cp);
                i += 1;
            }
            (None, Some(cq)) => {
                r = cq;
                j += 1;
            }
            (None, None) => unreachable!("loop condition"),
        }
    }
    r
}

/// Common integer scale for two 1D coordinate lists.
fn to_ints(p: &Curve, q: &Curve) -> Result<(Vec<i64>, Vec<i64>, i64)> {
    let mut scale: i64 = 1;
    for c in p.coords().iter().chain(q.coords()) {
        let g = scale.gcd(c.denom());
        scale = (scale / g).checked_mul(*c.denom()).ok_or(Error::TooLarge)?;
    }
    let conv = |c: &Curve| -> Result<Vec<i64>> {
        c.coords()
            .iter()
            .map(|v| {
                let s = *v.numer() as i128 * (scale / v.denom()) as i128;
                if s.abs() > LIMIT {
                    Err(Error::TooLarge)
                } else {
                    Ok(s as i64)
                }
            })
            .collect()
    };
    Ok((conv(p)?, conv(q)?, scale))
}

/// Minimum width of a path from `(1,1)` into the last cell, for growing curves.
pub fn greedy_matching(p: &Curve, q: &Curve) -> Result<Rational> {
    require_1d(p)?;
    require_1d(q)?;
    if !is_growing(p.coords()) || !is_growing(q.coords()) {
        return domain("greedy matching needs growing curves");
    }
    let (a, b, scale) = to_ints(p, q)?;
    Ok(Rational::new(greedy(&a, &b), scale))
}

/// Weak distance between canonical integer curves.
fn weak_canonical(p: &[i64], q: &[i64]) -> i64 {
    let constant = |v: &[i64]| v.iter().all(|&x| x == v[0]);
    let far = |x: i64, v: &[i64]| {
        let lo = *v.iter().min().expect("non-empty");
        let hi = *v.iter().max().expect("non-empty");
        (x - lo).abs().max((x - hi).abs())
    };
    if constant(p) {
        return far(p[0], q);
    }
    if constant(q) {
        return far(q[0], p);
    }
    let i = spanning_edge_index(p).expect("canonical curves have a spanning edge");
    let j = spanning_edge_index(q).expect("canonical curves have a spanning edge");
    let left = greedy(&p[..=i + 1], &q[..=j + 1]);
    let pr: Vec<i64> = p[i..].iter().rev().copied().collect();
    let qr: Vec<i64> = q[j..].iter().rev().copied().collect();
    left.max(greedy(&pr, &qr))
}

/// Exact weak Fréchet distance (endpoints fixed) in linear time.
pub fn weak_frechet_1d_linear(p: &Curve, q: &Curve) -> Result<Rational> {
    require_1d(p)?;
    require_1d(q)?;
    let (a, b, scale) = to_ints(p, q)?;
    let a = canonicalize_values(&a);
    let b = canonicalize_values(&b);
    Ok(Rational::new(weak_canonical(&a, &b), scale))
}
