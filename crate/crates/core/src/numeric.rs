//! Exact numbers: rational coordinates and distances stored by their square.
//!
//! Coordinates are `Ratio<i64>`. Distances between 2D points are generally
//! irrational, so [`Dist`] keeps the squared value as an exact rational and
//! only takes the root when it is itself rational (always the case in 1D).

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Squared quantities and scaled geometry use 128-bit rationals.
pub type Rational128 = Ratio<i128>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Parses `"3"`, `"-2.25"` or `"7/3"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, fracpart)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if fracpart.is_empty() && int_digits.is_empty() {
            return Err(bad());
        }
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !fracpart.chars().all(|c| c.is_ascii_digit())
            || fracpart.len() > 18
        {
            return Err(bad());
        }
        let whole: i64 = if int_digits.is_empty() { 0 } else { int_digits.parse().map_err(|_| bad())? };
        let den = 10i64.checked_pow(fracpart.len() as u32).ok_or_else(bad)?;
        let f: i64 = if fracpart.is_empty() { 0 } else { fracpart.parse().map_err(|_| bad())? };
        let num = whole
            .checked_mul(den)
            .and_then(|w| w.checked_add(f))
            .ok_or_else(bad)?;
        let r = Rational::new(num, den);
        return Ok(if negative { -r } else { r });
    }
    let n: i64 = s.parse().map_err(|_| bad())?;
    Ok(rat(n))
}

/// Lowest terms, `p/q`, integers without denominator.
pub fn format_rational<T: Clone + Integer + fmt::Display>(r: &Ratio<T>) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Floor of the square root of a non-negative `i128`.
pub fn isqrt_i128(n: i128) -> i128 {
    assert!(n >= 0, "isqrt of a negative number");
    if n < 2 {
        return n;
    }
    let n = n as u128;
    let mut r = (n as f64).sqrt() as u128;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r as i128
}

/// Square root of `n` if it is a perfect square.
pub fn exact_sqrt_i128(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = isqrt_i128(n);
    (r * r == n).then_some(r)
}

/// A non-negative distance, stored exactly as its square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dist {
    sq: Rational128,
}

impl Dist {
    pub const ZERO: Dist = Dist { sq: Ratio::new_raw(0, 1) };

    pub fn from_rational(r: Rational) -> Dist {
        let r = Rational128::new(*r.numer() as i128, *r.denom() as i128);
        Dist { sq: r * r }
    }

    pub fn from_int(n: i64) -> Dist {
        Dist::from_rational(rat(n))
    }

    pub fn from_squared(sq: Rational128) -> Result<Dist> {
        if sq.is_negative() {
            return Err(Error::Domain(format!("negative squared distance {sq}")));
        }
        Ok(Dist { sq })
    }

    pub fn squared(&self) -> Rational128 {
        self.sq
    }

    /// The distance itself when it is rational and fits in `i64`.
    pub fn to_rational(&self) -> Option<Rational> {
        let n = exact_sqrt_i128(*self.sq.numer())?;
        let d = exact_sqrt_i128(*self.sq.denom())?;
        Some(Rational::new(i64::try_from(n).ok()?, i64::try_from(d).ok()?))
    }

    pub fn to_f64(&self) -> f64 {
        self.sq.to_f64().unwrap_or(f64::INFINITY).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.sq.is_zero()
    }
}

impl From<Rational> for Dist {
    fn from(r: Rational) -> Dist {
        Dist::from_rational(r)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some(r) => f.write_str(&format_rational(&r)),
            None => write!(f, "sqrt({})", format_rational(&self.sq)),
        }
    }
}

impl FromStr for Dist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Dist> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
            let sq = parse_rational(inner)?;
            return Dist::from_squared(Rational128::new(*sq.numer() as i128, *sq.denom() as i128));
        }
        let r = parse_rational(s)?;
        if r.is_negative() {
            return Err(Error::Parse(format!("distance must be non-negative: {s}")));
        }
        Ok(Dist::from_rational(r))
    }
}

impl Serialize for Dist {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Dist {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Dist, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// JSON value for a rational: a plain number when integral, else `"p/q"`.
pub(crate) fn rational_to_json(r: &Rational) -> serde_json::Value {
    if r.is_integer() {
        serde_json::Value::from(*r.numer())
    } else {
        serde_json::Value::from(format_rational(r))
    }
}

/// Accepts JSON integers, decimal numbers (by their literal text) and strings.
pub(crate) fn rational_from_json(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::Number(n) => parse_rational(&n.to_string()),
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!("expected a number, got {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_decimals_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-2.25").unwrap(), frac(-9, 4));
        assert_eq!(parse_rational("0.5").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("-.5").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational("14/4").unwrap(), frac(7, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_rational(&frac(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(-5)), "-5");
    }

    #[test]
    fn isqrt_matches_floor() {
        for n in 0..2000i128 {
            let r = isqrt_i128(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        let big = (1i128 << 100) + 12345;
        let r = isqrt_i128(big);
        assert!(r * r <= big && (r + 1) * (r + 1) > big);
        assert_eq!(exact_sqrt_i128(1 << 100), Some(1 << 50));
    }

    #[test]
    fn dist_display_and_parse() {
        assert_eq!(Dist::from_int(3).to_string(), "3");
        assert_eq!(Dist::from_rational(frac(-1, 2)).to_string(), "1/2");
        let d: Dist = "sqrt(2)".parse().unwrap();
        assert_eq!(d.to_string(), "sqrt(2)");
        assert!(d.to_rational().is_none());
        assert!(Dist::from_int(1) < d && d < Dist::from_rational(frac(3, 2)));
        assert_eq!("9/4".parse::<Dist>().unwrap(), Dist::from_rational(frac(9, 4)));
        assert!("-1".parse::<Dist>().is_err());
    }
}
