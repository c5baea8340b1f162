//! Polygonal curves in one or two dimensions with index parameterization.
//!
//! A curve on `n` vertices is the map `[1, n] -> R^dim` with
//! `P(i + λ) = p_i + λ (p_{i+1} - p_i)`. Composition concatenates vertex
//! sequences without merging duplicates; collapsing collinear vertices is a
//! separate explicit pass ([`Curve::normalize_collinear`]).

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::numeric::{format_rational, rat, rational_from_json, rational_to_json, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dim {
    One,
    Two,
}

impl Dim {
    pub fn get(self) -> usize {
        match self {
            Dim::One => 1,
            Dim::Two => 2,
        }
    }

    pub fn from_usize(d: usize) -> Result<Dim> {
        match d {
            1 => Ok(Dim::One),
            2 => Ok(Dim::Two),
            other => Err(Error::UnsupportedDimension(other)),
        }
    }
}

/// A point of a 1D or 2D curve. 1D points have `y == 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Point {
        Point { x, y }
    }

    pub fn scalar(x: Rational) -> Point {
        Point { x, y: Rational::zero() }
    }

    /// Exact squared Euclidean distance.
    pub fn dist2(&self, other: &Point) -> crate::numeric::Rational128 {
        let wide = |r: Rational| crate::numeric::Rational128::new(*r.numer() as i128, *r.denom() as i128);
        let dx = wide(self.x) - wide(other.x);
        let dy = wide(self.y) - wide(other.y);
        dx * dx + dy * dy
    }

    fn lerp(&self, other: &Point, lambda: Rational) -> Point {
        Point {
            x: self.x + lambda * (other.x - self.x),
            y: self.y + lambda * (other.y - self.y),
        }
    }
}

/// A parameter value `t ∈ [1, |P|]` along a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamPoint(pub Rational);

impl ParamPoint {
    pub fn new(t: Rational) -> ParamPoint {
        ParamPoint(t)
    }

    pub fn vertex(i: usize) -> ParamPoint {
        ParamPoint(rat(i as i64))
    }

    pub fn value(self) -> Rational {
        self.0
    }
}

impl From<Rational> for ParamPoint {
    fn from(t: Rational) -> ParamPoint {
        ParamPoint(t)
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    dim: Dim,
    /// Flat coordinates, `dim` per vertex.
    coords: Vec<Rational>,
}

impl Curve {
    pub fn new_1d(values: Vec<Rational>) -> Result<Curve> {
        if values.is_empty() {
            return Err(Error::EmptyCurve);
        }
        Ok(Curve { dim: Dim::One, coords: values })
    }

    pub fn new_2d(points: Vec<(Rational, Rational)>) -> Result<Curve> {
        if points.is_empty() {
            return Err(Error::EmptyCurve);
        }
        let coords = points.into_iter().flat_map(|(x, y)| [x, y]).collect();
        Ok(Curve { dim: Dim::Two, coords })
    }

    pub fn from_ints(values: &[i64]) -> Result<Curve> {
        Curve::new_1d(values.iter().map(|&v| rat(v)).collect())
    }

    pub fn from_int_points(points: &[(i64, i64)]) -> Result<Curve> {
        Curve::new_2d(points.iter().map(|&(x, y)| (rat(x), rat(y))).collect())
    }

    pub fn from_points(dim: Dim, points: &[Point]) -> Result<Curve> {
        match dim {
            Dim::One => Curve::new_1d(points.iter().map(|p| p.x).collect()),
            Dim::Two => Curve::new_2d(points.iter().map(|p| (p.x, p.y)).collect()),
        }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    /// Number of vertices, `|P|`.
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim.get()
    }

    /// Always false; curves have at least one vertex.
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Vertex `i`, 0-based.
    pub fn vertex(&self, i: usize) -> Point {
        match self.dim {
            Dim::One => Point::scalar(self.coords[i]),
            Dim::Two => Point::new(self.coords[2 * i], self.coords[2 * i + 1]),
        }
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = Point> + ExactSizeIterator + '_ {
        (0..self.len()).map(|i| self.vertex(i))
    }

    /// Flat coordinate slice; for 1D curves this is the vertex values.
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    fn check_param(&self, t: ParamPoint) -> Result<()> {
        if t.0 < Rational::one() || t.0 > rat(self.len() as i64) {
            return Err(Error::ParamOutOfRange { t: t.to_string(), len: self.len() });
        }
        Ok(())
    }

    /// `P(t)`; integer `t` returns the vertex exactly.
    pub fn eval(&self, t: ParamPoint) -> Result<Point> {
        self.check_param(t)?;
        let floor = t.0.floor();
        let i = *floor.numer() as usize; // 1-based vertex index
        let lambda = t.0 - floor;
        if lambda.is_zero() {
            return Ok(self.vertex(i - 1));
        }
        Ok(self.vertex(i - 1).lerp(&self.vertex(i), lambda))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Curve) -> Result<Curve> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim.get(), other.dim.get()));
        }
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        Ok(Curve { dim: self.dim, coords })
    }

    /// `k · self`, the composition of `k` copies.
    pub fn repeat(&self, k: usize) -> Result<Curve> {
        if k == 0 {
            return domain("repeat count must be at least 1");
        }
        Ok(Curve { dim: self.dim, coords: self.coords.repeat(k) })
    }

    /// `P[a, b]`: starts at `P(a)`, keeps every `p_i` with `a < i < b`, ends at `P(b)`.
    pub fn subcurve(&self, a: ParamPoint, b: ParamPoint) -> Result<Curve> {
        self.check_param(a)?;
        self.check_param(b)?;
        if a > b {
            return domain(format!("subcurve bounds reversed: {a} > {b}"));
        }
        let mut pts = vec![self.eval(a)?];
        let first = a.0.floor().to_integer() + 1;
        let last = b.0.ceil().to_integer() - 1;
        for i in first..=last {
            pts.push(self.vertex(i as usize - 1));
        }
        pts.push(self.eval(b)?);
        Curve::from_points(self.dim, &pts)
    }

    pub fn reverse(&self) -> Curve {
        let pts: Vec<Point> = self.vertices().rev().collect();
        Curve::from_points(self.dim, &pts).expect("non-empty")
    }

    /// Exhaustively removes interior vertices that lie on the closed segment
    /// between their neighbours. First and last vertices are kept.
    pub fn normalize_collinear(&self) -> Result<Curve> {
        if self.dim != Dim::One {
            return Err(Error::WrongDimension { expected: 1, found: self.dim.get() });
        }
        let mut out: Vec<Rational> = Vec::with_capacity(self.coords.len());
        for &v in &self.coords {
            while out.len() >= 2 && between(out[out.len() - 2], out[out.len() - 1], v) {
                out.pop();
            }
            out.push(v);
        }
        Curve::new_1d(out)
    }
}

/// Whether `mid` lies on the closed segment `[a, b]` (in either orientation).
pub(crate) fn between<T: PartialOrd>(a: T, mid: T, b: T) -> bool {
    (a <= mid && mid <= b) || (b <= mid && mid <= a)
}

#[derive(Serialize, Deserialize)]
struct CurveRepr {
    dim: usize,
    vertices: Vec<serde_json::Value>,
}

impl Serialize for Curve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let vertices = match self.dim {
            Dim::One => self.coords.iter().map(rational_to_json).collect(),
            Dim::Two => self
                .coords
                .chunks(2)
                .map(|c| serde_json::Value::Array(vec![rational_to_json(&c[0]), rational_to_json(&c[1])]))
                .collect(),
        };
        CurveRepr { dim: self.dim.get(), vertices }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Curve {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Curve, D::Error> {
        use serde::de::Error as _;
        let repr = CurveRepr::deserialize(d)?;
        curve_from_repr(repr).map_err(D::Error::custom)
    }
}

fn curve_from_repr(repr: CurveRepr) -> Result<Curve> {
    match Dim::from_usize(repr.dim)? {
        Dim::One => {
            let values = repr.vertices.iter().map(rational_from_json).collect::<Result<Vec<_>>>()?;
            Curve::new_1d(values)
        }
        Dim::Two => {
            let mut pts = Vec::with_capacity(repr.vertices.len());
            for v in &repr.vertices {
                match v.as_array().map(Vec::as_slice) {
                    Some([x, y]) => pts.push((rational_from_json(x)?, rational_from_json(y)?)),
                    _ => return Err(Error::Parse(format!("2D vertex must be a pair, got {v}"))),
                }
            }
            Curve::new_2d(pts)
        }
    }
}

impl Curve {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("curve serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Curve> {
        let repr: CurveRepr = serde_json::from_str(s)?;
        curve_from_repr(repr)
    }
}
