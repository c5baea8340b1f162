use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::curve::{Curve, ParamPoint};
use crate::error::{domain, Error, Result};
use crate::numeric::{rational_from_json, rational_to_json, Dist, Rational};

/// Distance variant tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Continuous Fréchet.
    F,
    /// Discrete Fréchet.
    DF,
    /// Partial Fréchet: all of `P` against a subcurve of `Q`.
    PartialF,
    /// Discrete partial Fréchet.
    PartialDF,
    /// Weak Fréchet with fixed endpoints.
    WF,
    /// Weak Fréchet without endpoint restriction.
    WwF,
    /// Discrete weak Fréchet with fixed endpoints.
    DwF,
    /// Discrete weak Fréchet without endpoint restriction.
    DwwF,
}

impl Variant {
    pub const ALL: [Variant; 8] = [
        Variant::F,
        Variant::DF,
        Variant::PartialF,
        Variant::PartialDF,
        Variant::WF,
        Variant::WwF,
        Variant::DwF,
        Variant::DwwF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::F => "F",
            Variant::DF => "dF",
            Variant::PartialF => "partialF",
            Variant::PartialDF => "partial-dF",
            Variant::WF => "wF",
            Variant::WwF => "wwF",
            Variant::DwF => "dwF",
            Variant::DwwF => "dwwF",
        }
    }

    pub fn is_discrete(self) -> bool {
        matches!(self, Variant::DF | Variant::PartialDF | Variant::DwF | Variant::DwwF)
    }

    pub fn is_weak(self) -> bool {
        matches!(self, Variant::WF | Variant::WwF | Variant::DwF | Variant::DwwF)
    }

    pub fn is_partial(self) -> bool {
        matches!(self, Variant::PartialF | Variant::PartialDF)
    }

    /// Weak variants without the endpoint requirement.
    pub fn is_unrestricted(self) -> bool {
        matches!(self, Variant::WwF | Variant::DwwF)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown variant {s:?}")))
    }
}

impl Serialize for Variant {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Variant {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Variant, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A witness: a path in parameter space (continuous variants) or a sequence
/// of 1-based index pairs (discrete variants).
#[derive(Clone, Debug, PartialEq)]
pub struct Matching {
    pub variant: Variant,
    pub path: Vec<(ParamPoint, ParamPoint)>,
    pub width: Dist,
}

impl Matching {
    /// Checks the variant's shape rules and recomputes the width exactly.
    pub fn validate(&self, p: &Curve, q: &Curve) -> Result<Dist> {
        let path = &self.path;
        let Some(&first) = path.first() else {
            return domain("empty matching");
        };
        let last = *path.last().expect("non-empty");
        let (n, m) = (ParamPoint::vertex(p.len()), ParamPoint::vertex(q.len()));
        let one = ParamPoint::vertex(1);
        let v = self.variant;
        if v.is_discrete() {
            for &(a, b) in path {
                if !a.0.is_integer() || !b.0.is_integer() {
                    return domain("discrete coupling uses a non-vertex index");
                }
            }
        }
        for w in path.windows(2) {
            let (dx, dy) = (w[1].0 .0 - w[0].0 .0, w[1].1 .0 - w[0].1 .0);
            if !v.is_weak() && (dx < Rational::zero() || dy < Rational::zero()) {
                return domain("matching is not monotone");
            }
            if v.is_discrete() && (dx.abs() > Rational::from_integer(1) || dy.abs() > Rational::from_integer(1)) {
                return domain("discrete coupling skips a vertex");
            }
        }
        let ok_ends = match v {
            Variant::F | Variant::DF | Variant::WF | Variant::DwF => first == (one, one) && last == (n, m),
            Variant::PartialF | Variant::PartialDF => first.0 == one && last.0 == n,
            Variant::WwF | Variant::DwwF => {
                let xs = path.iter().map(|pt| pt.0);
                let ys = path.iter().map(|pt| pt.1);
                xs.clone().min() == Some(one) && xs.max() == Some(n) && ys.clone().min() == Some(one) && ys.max() == Some(m)
            }
        };
        if !ok_ends {
            return domain("matching violates the endpoint rule");
        }
        let mut width = Dist::ZERO;
        let mut check = |a: ParamPoint, b: ParamPoint| -> Result<()> {
            let d = Dist::from_squared(p.eval(a)?.dist2(&q.eval(b)?))?;
            width = width.max(d);
            Ok(())
        };
        check(first.0, first.1)?;
        for w in path.windows(2) {
            for (a, b) in split_at_grid(w[0], w[1]) {
                check(a, b)?;
            }
        }
        Ok(width)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matching serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Matching> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Points where the segment `a -> b` crosses integer grid lines, plus `b`.
/// Between consecutive points both curves move affinely.
fn split_at_grid(a: (ParamPoint, ParamPoint), b: (ParamPoint, ParamPoint)) -> Vec<(ParamPoint, ParamPoint)> {
    let (x0, y0, x1, y1) = (a.0 .0, a.1 .0, b.0 .0, b.1 .0);
    let mut ts: Vec<Rational> = Vec::new();
    for (s, e) in [(x0, x1), (y0, y1)] {
        if s == e {
            continue;
        }
        let (lo, hi) = if s < e { (s, e) } else { (e, s) };
        let mut k = lo.floor() + Rational::from_integer(1);
        while k < hi {
            ts.push((k - s) / (e - s));
            k += Rational::from_integer(1);
        }
    }
    ts.sort();
    ts.dedup();
    ts.push(Rational::from_integer(1));
    ts.into_iter()
        .map(|t| (ParamPoint(x0 + t * (x1 - x0)), ParamPoint(y0 + t * (y1 - y0))))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct MatchingRepr {
    variant: Variant,
    width: Dist,
    path: Vec<[serde_json::Value; 2]>,
}

impl Serialize for Matching {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatchingRepr {
            variant: self.variant,
            width: self.width,
            path: self.path.iter().map(|(a, b)| [rational_to_json(&a.0), rational_to_json(&b.0)]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matching {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Matching, D::Error> {
        use serde::de::Error as _;
        let repr = MatchingRepr::deserialize(d)?;
        let path = repr
            .path
            .iter()
            .map(|[a, b]| Ok((ParamPoint(rational_from_json(a)?), ParamPoint(rational_from_json(b)?))))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(Matching { variant: repr.variant, path, width: repr.width })
    }
}
