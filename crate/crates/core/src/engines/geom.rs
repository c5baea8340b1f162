//! Integer frame for exact free-space computations.
//!
//! Both curves are translated and scaled by a common factor so that every
//! coordinate and ε² become integers. Free-interval endpoints along an edge
//! are numbers of the form `(a + s·√k) / den` where `den` is the squared edge
//! length; only endpoints on the same edge are ever compared, so `den`
//! stays implicit.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::curve::{Curve, Dim};
use crate::error::{Error, Result};
use crate::numeric::{exact_sqrt_i128, Dist, Rational, Rational128};

/// Largest absolute scaled coordinate; keeps all squared quantities in i128.
const COORD_LIMIT: i128 = 1 << 28;

pub(crate) type Pt = [i64; 2];

pub(crate) struct Frame {
    pub dim: Dim,
    pub p: Vec<Pt>,
    pub q: Vec<Pt>,
    /// Common scale factor applied after translation.
    pub scale: i64,
}

fn lcm_checked(a: i64, b: i64) -> Result<i64> {
    let g = a.gcd(&b);
    (a / g).checked_mul(b).ok_or(Error::TooLarge)
}

impl Frame {
    /// `extra_den` is folded into the scale so that a caller-supplied
    /// quantity with that denominator becomes integral too.
    pub fn new(p: &Curve, q: &Curve, extra_den: i64) -> Result<Frame> {
        if p.dim() != q.dim() {
            return Err(Error::DimensionMismatch(p.dim().get(), q.dim().get()));
        }
        let dim = p.dim();
        let d = dim.get();
        let mut scale = extra_den.max(1);
        let mut min = [Rational::zero(); 2];
        for axis in 0..d {
            let mut lo: Option<Rational> = None;
            for c in p.coords().iter().skip(axis).step_by(d).chain(q.coords().iter().skip(axis).step_by(d)) {
                scale = lcm_checked(scale, *c.denom())?;
                lo = Some(lo.map_or(*c, |l| l.min(*c)));
            }
            min[axis] = lo.expect("curves are non-empty");
        }
        let convert = |c: &Curve| -> Result<Vec<Pt>> {
            let mut out = Vec::with_capacity(c.len());
            for v in c.coords().chunks(d) {
                let mut pt = [0i64; 2];
                for axis in 0..d {
                    let shifted = v[axis] - min[axis];
                    let s = *shifted.numer() as i128 * (scale / *shifted.denom()) as i128;
                    if s.abs() > COORD_LIMIT {
                        return Err(Error::TooLarge);
                    }
                    pt[axis] = s as i64;
                }
                out.push(pt);
            }
            Ok(out)
        };
        Ok(Frame { dim, p: convert(p)?, q: convert(q)?, scale })
    }

    /// Frame for a decision at `eps`, together with the scaled integer ε².
    /// ε is clamped to the bounding-box diameter, beyond which every pair is free.
    pub fn with_eps(p: &Curve, q: &Curve, eps: Dist) -> Result<(Frame, i128)> {
        let diam2 = bbox_diameter_sq(p, q)?;
        let eps2 = if eps.squared() > diam2 { diam2 } else { eps.squared() };
        let den = *eps2.denom();
        let extra = match exact_sqrt_i128(den) {
            Some(r) => r,
            None => den,
        };
        let extra = i64::try_from(extra).map_err(|_| Error::TooLarge)?;
        let frame = Frame::new(p, q, extra)?;
        let l2 = frame.scale as i128 * frame.scale as i128;
        let scaled = eps2 * Rational128::from_integer(l2);
        debug_assert!(scaled.is_integer());
        Ok((frame, scaled.to_integer()))
    }

    /// Undo scaling for a squared integer distance.
    pub fn unscale_sq(&self, sq: Rational128) -> Result<Dist> {
        let l2 = self.scale as i128 * self.scale as i128;
        let n = *sq.numer();
        let d = sq.denom().checked_mul(l2).ok_or(Error::TooLarge)?;
        Dist::from_squared(Rational128::new(n, d))
    }

    /// Undo scaling for a 1D absolute distance.
    pub fn unscale_abs(&self, v: i64) -> Dist {
        Dist::from_rational(Rational::new(v, self.scale))
    }
}

fn bbox_diameter_sq(p: &Curve, q: &Curve) -> Result<Rational128> {
    let d = p.dim().get();
    let mut total = Rational128::zero();
    for axis in 0..d {
        let mut it = p.coords().iter().skip(axis).step_by(d).chain(q.coords().iter().skip(axis).step_by(d));
        let first = *it.next().expect("non-empty");
        let (lo, hi) = it.fold((first, first), |(lo, hi), c| (lo.min(*c), hi.max(*c)));
        let w = hi - lo;
        let w = Rational128::new(*w.numer() as i128, *w.denom() as i128);
        total += w * w;
    }
    Ok(total)
}

#[inline]
pub(crate) fn sub(a: Pt, b: Pt) -> [i128; 2] {
    [a[0] as i128 - b[0] as i128, a[1] as i128 - b[1] as i128]
}

#[inline]
pub(crate) fn dot(a: [i128; 2], b: [i128; 2]) -> i128 {
    a[0] * b[0] + a[1] * b[1]
}

#[inline]
pub(crate) fn dist2(a: Pt, b: Pt) -> i128 {
    let w = sub(a, b);
    dot(w, w)
}

/// Squared distance from `p` to segment `ab` as `(num, den)` with `den > 0`.
pub(crate) fn point_segment_dist2(p: Pt, a: Pt, b: Pt) -> (i128, i128) {
    let dv = sub(b, a);
    let w = sub(p, a);
    let len2 = dot(dv, dv);
    let t = dot(dv, w);
    if len2 == 0 || t <= 0 {
        return (dot(w, w), 1);
    }
    if t >= len2 {
        return (dist2(p, b), 1);
    }
    // |w|² - t²/len2 = (|w|²·len2 - t²) / len2; the numerator equals cross²
    let cross = dv[0] * w[1] - dv[1] * w[0];
    (cross * cross, len2)
}

/// Compares `n1/d1` with `n2/d2` (`d1, d2 > 0`) exactly.
pub(crate) fn cmp_frac(n1: i128, d1: i128, n2: i128, d2: i128) -> Ordering {
    if d1 == d2 {
        return n1.cmp(&n2);
    }
    match (n1.checked_mul(d2), n2.checked_mul(d1)) {
        (Some(a), Some(b)) => a.cmp(&b),
        _ => (BigInt::from(n1) * BigInt::from(d2)).cmp(&(BigInt::from(n2) * BigInt::from(d1))),
    }
}

/// A number `a + s·√k` with `k > 0` not a perfect square when `s != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Param {
    pub a: i128,
    pub s: i8,
    pub k: i128,
}

impl Param {
    pub const fn int(a: i128) -> Param {
        Param { a, s: 0, k: 0 }
    }

    pub fn is_exact(&self) -> bool {
        self.s == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.a as f64 + self.s as f64 * (self.k as f64).sqrt()
    }

    pub fn cmp_param(&self, other: &Param) -> Ordering {
        if self.s == 0 && other.s == 0 {
            return self.a.cmp(&other.a);
        }
        surd_sign(self.a - other.a, self.s, self.k, -other.s, other.k)
    }
}

/// Sign of `x + s1·√k1 + s2·√k2` with `k1, k2 >= 0`.
fn surd_sign(x: i128, s1: i8, k1: i128, s2: i8, k2: i128) -> Ordering {
    let x = BigInt::from(x);
    let u = (s1 as i32, BigInt::from(k1));
    let v = (s2 as i32, BigInt::from(k2));
    // sign of u + v
    let uv = sign_two(&u, &v);
    let sx = x.sign_ord();
    if uv == Ordering::Equal {
        return sx;
    }
    if sx == Ordering::Equal || sx == uv {
        return uv;
    }
    // opposite signs: compare x² with (u+v)² = k1' + k2' + 2·σ·√(k1'k2')
    let ku = if u.0 == 0 { BigInt::zero() } else { u.1.clone() };
    let kv = if v.0 == 0 { BigInt::zero() } else { v.1.clone() };
    let sigma = u.0 * v.0;
    let y = &x * &x - &ku - &kv;
    // sign of x² - (u+v)² = y - 2σ√(ku·kv)
    let z = BigInt::from(4) * &ku * &kv;
    let mag = if sigma == 0 || z.is_zero() {
        y.sign_ord()
    } else if sigma > 0 {
        // y - √z
        if y.sign_ord() != Ordering::Greater {
            Ordering::Less
        } else {
            (&y * &y).cmp(&z)
        }
    } else {
        // y + √z
        if y.sign_ord() != Ordering::Less {
            Ordering::Greater
        } else {
            z.cmp(&(&y * &y))
        }
    };
    // |x| vs |u+v|: larger magnitude wins the sign
    match mag {
        Ordering::Greater => sx,
        Ordering::Less => uv,
        Ordering::Equal => Ordering::Equal,
    }
}

fn sign_two(u: &(i32, BigInt), v: &(i32, BigInt)) -> Ordering {
    let su = if u.1.is_zero() { 0 } else { u.0 };
    let sv = if v.1.is_zero() { 0 } else { v.0 };
    match (su, sv) {
        (0, 0) => Ordering::Equal,
        (0, s) | (s, 0) => s.cmp(&0),
        (a, b) if a == b => a.cmp(&0),
        _ => {
            // u positive, v negative or vice versa: compare magnitudes
            let c = u.1.cmp(&v.1);
            match c {
                Ordering::Equal => Ordering::Equal,
                Ordering::Greater => su.cmp(&0),
                Ordering::Less => sv.cmp(&0),
            }
        }
    }
}

trait SignOrd {
    fn sign_ord(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ord(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

/// A closed sub-interval `[lo, hi]` of an edge's parameter range `[0, den]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Interval {
    pub lo: Param,
    pub hi: Param,
}

/// Free interval of edge `a -> b` against point `p` at scaled ε²,
/// in units where the edge spans `[0, den]`. Returns `(interval, den)`.
#[inline]
pub(crate) fn free_interval(a: Pt, b: Pt, p: Pt, eps2: i128, eps_root: Option<i128>) -> (Option<Interval>, i128) {
    let dv = sub(b, a);
    let w = sub(a, p);
    if let (0, 0, Some(e)) = (dv[1], w[1], eps_root) {
        return free_interval_line(dv[0], w[0], e);
    }
    let den = dot(dv, dv);
    let ww = dot(w, w);
    if den == 0 {
        let iv = (ww <= eps2).then_some(Interval { lo: Param::int(0), hi: Param::int(1) });
        return (iv, 1);
    }
    let dw = dot(dv, w);
    let center = -dw;
    // disc = dw² - den·(|w|² - ε²) = den·ε² - cross²
    let cross = dv[0] * w[1] - dv[1] * w[0];
    let disc = den * eps2 - cross * cross;
    if disc < 0 {
        return (None, den);
    }
    let (lo, hi) = match root_of(disc, den, eps_root) {
        Some(r) => (Param::int(center - r), Param::int(center + r)),
        None => (Param { a: center, s: -1, k: disc }, Param { a: center, s: 1, k: disc }),
    };
    let zero = Param::int(0);
    let end = Param::int(den);
    let lo = if lo.cmp_param(&zero) == Ordering::Less { zero } else { lo };
    let hi = if hi.cmp_param(&end) == Ordering::Greater { end } else { hi };
    if lo.cmp_param(&hi) == Ordering::Greater {
        return (None, den);
    }
    (Some(Interval { lo, hi }), den)
}

/// Collinear case with rational ε: the roots are `−d·w ± |d|·ε` over `d²`.
#[inline]
fn free_interval_line(d: i128, w: i128, eps: i128) -> (Option<Interval>, i128) {
    if d == 0 {
        let iv = (w.abs() <= eps).then_some(Interval { lo: Param::int(0), hi: Param::int(1) });
        return (iv, 1);
    }
    let den = d * d;
    let center = -d * w;
    let r = d.abs() * eps;
    let lo = (center - r).max(0);
    let hi = (center + r).min(den);
    if lo > hi {
        return (None, den);
    }
    (Some(Interval { lo: Param::int(lo), hi: Param::int(hi) }), den)
}

/// `√disc` when it is an integer. In 1D `disc = den·ε²` so the root is `|d|·ε`.
#[inline]
fn root_of(disc: i128, den: i128, eps_root: Option<i128>) -> Option<i128> {
    if disc == 0 {
        return Some(0);
    }
    if let Some(e) = eps_root {
        if let Some(r) = exact_sqrt_small(den) {
            if r * r * e * e == disc {
                return Some(r * e);
            }
        }
    }
    exact_sqrt_i128(disc)
}

#[inline]
fn exact_sqrt_small(n: i128) -> Option<i128> {
    let r = (n as f64).sqrt().round() as i128;
    (r * r == n).then_some(r)
}
