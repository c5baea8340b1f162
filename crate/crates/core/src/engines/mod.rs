//! Decision procedures and exact values for every Fréchet variant.
//!
//! Decisions use the closed free space `‖P(x) − Q(y)‖ ≤ ε`. Exact values of
//! the continuous monotone variants are found by binary search over
//! [`critical_values`]; the discrete and weak variants are computed directly.

mod critical;
mod diagram;
mod discrete;
mod geom;
mod matching;
mod monotone;
mod weak;

use num_traits::Signed;

pub use critical::critical_values;
pub use diagram::{CellBoundary, DecisionDiagram, EdgePosition, FreeInterval};
pub use matching::{Matching, Variant};

use crate::curve::{Curve, Dim};
use crate::error::{domain, Error, Result};
use crate::numeric::{Dist, Rational};
use monotone::Mode;

fn check_pair(p: &Curve, q: &Curve) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim().get(), q.dim().get()));
    }
    Ok(())
}

fn check_eps(eps: Rational) -> Result<Dist> {
    if eps.is_negative() {
        return domain(format!("eps must be non-negative, got {eps}"));
    }
    Ok(Dist::from_rational(eps))
}

/// Decision for any variant at a possibly irrational ε.
pub fn decide_at(variant: Variant, p: &Curve, q: &Curve, eps: Dist) -> Result<bool> {
    check_pair(p, q)?;
    match variant {
        Variant::F => monotone::decide(p, q, eps, Mode::Full),
        Variant::PartialF => monotone::decide(p, q, eps, Mode::Partial),
        Variant::DF => Ok(discrete::exact(p, q, false)? <= eps),
        Variant::PartialDF => Ok(discrete::exact(p, q, true)? <= eps),
        Variant::WF => weak::continuous_decide(p, q, eps, false),
        Variant::WwF => weak::continuous_decide(p, q, eps, true),
        Variant::DwF => weak::discrete_decide(p, q, eps, false),
        Variant::DwwF => weak::discrete_decide(p, q, eps, true),
    }
}

/// Decision for any variant at rational ε.
pub fn decide(variant: Variant, p: &Curve, q: &Curve, eps: Rational) -> Result<bool> {
    decide_at(variant, p, q, check_eps(eps)?)
}

/// Exact distance for any variant.
pub fn exact(variant: Variant, p: &Curve, q: &Curve) -> Result<Dist> {
    check_pair(p, q)?;
    match variant {
        Variant::F => search_critical(p, q, Mode::Full),
        Variant::PartialF => search_critical(p, q, Mode::Partial),
        Variant::DF => discrete::exact(p, q, false),
        Variant::PartialDF => discrete::exact(p, q, true),
        Variant::WF => weak::continuous_exact(p, q, false),
        Variant::WwF => weak::continuous_exact(p, q, true),
        Variant::DwF => weak::discrete_exact(p, q, false),
        Variant::DwwF => weak::discrete_exact(p, q, true),
    }
}

/// Smallest critical value at which the monotone decision holds.
fn search_critical(p: &Curve, q: &Curve, mode: Mode) -> Result<Dist> {
    let values = critical_values(p, q)?;
    let (mut lo, mut hi) = (0, values.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if monotone::decide(p, q, values[mid], mode)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    values
        .get(lo)
        .copied()
        .ok_or_else(|| Error::Domain("no critical value admits a matching".into()))
}

pub fn decide_frechet(p: &Curve, q: &Curve, eps: Rational) -> Result<bool> {
    decide(Variant::F, p, q, eps)
}

pub fn frechet_exact(p: &Curve, q: &Curve) -> Result<Dist> {
    exact(Variant::F, p, q)
}

pub fn decide_discrete_frechet(p: &Curve, q: &Curve, eps: Rational) -> Result<bool> {
    decide(Variant::DF, p, q, eps)
}

pub fn discrete_frechet_exact(p: &Curve, q: &Curve) -> Result<Dist> {
    exact(Variant::DF, p, q)
}

/// `P` is matched completely, `Q` partially.
pub fn decide_partial_frechet(p: &Curve, q: &Curve, eps: Rational, discrete: bool) -> Result<bool> {
    decide(if discrete { Variant::PartialDF } else { Variant::PartialF }, p, q, eps)
}

pub fn partial_frechet_exact(p: &Curve, q: &Curve, discrete: bool) -> Result<Dist> {
    exact(if discrete { Variant::PartialDF } else { Variant::PartialF }, p, q)
}

pub fn decide_weak_frechet(p: &Curve, q: &Curve, eps: Rational, endpoint_restricted: bool) -> Result<bool> {
    decide(if endpoint_restricted { Variant::WF } else { Variant::WwF }, p, q, eps)
}

pub fn weak_frechet_exact(p: &Curve, q: &Curve, endpoint_restricted: bool) -> Result<Dist> {
    exact(if endpoint_restricted { Variant::WF } else { Variant::WwF }, p, q)
}

pub fn decide_discrete_weak_frechet(p: &Curve, q: &Curve, eps: Rational, endpoint_restricted: bool) -> Result<bool> {
    decide(if endpoint_restricted { Variant::DwF } else { Variant::DwwF }, p, q, eps)
}

pub fn discrete_weak_frechet_exact(p: &Curve, q: &Curve, endpoint_restricted: bool) -> Result<Dist> {
    exact(if endpoint_restricted { Variant::DwF } else { Variant::DwwF }, p, q)
}

/// Hausdorff distance between the images `[min, max]` of two 1D curves.
pub fn hausdorff_image_1d(p: &Curve, q: &Curve) -> Result<Rational> {
    for c in [p, q] {
        if c.dim() != Dim::One {
            return Err(Error::WrongDimension { expected: 1, found: c.dim().get() });
        }
    }
    let range = |c: &Curve| {
        let lo = *c.coords().iter().min().expect("non-empty");
        let hi = *c.coords().iter().max().expect("non-empty");
        (lo, hi)
    };
    let (plo, phi) = range(p);
    let (qlo, qhi) = range(q);
    Ok((plo - qlo).abs().max((phi - qhi).abs()))
}

/// A witness of width at most ε for `variant`.
pub fn extract_matching(p: &Curve, q: &Curve, eps: Rational, variant: Variant) -> Result<Matching> {
    extract_matching_at(p, q, check_eps(eps)?, variant)
}

pub fn extract_matching_at(p: &Curve, q: &Curve, eps: Dist, variant: Variant) -> Result<Matching> {
    check_pair(p, q)?;
    let path = match variant {
        Variant::F => monotone::witness(p, q, eps, Mode::Full)?,
        Variant::PartialF => monotone::witness(p, q, eps, Mode::Partial)?,
        Variant::DF | Variant::PartialDF => {
            let (value, path) = discrete::witness(p, q, variant == Variant::PartialDF)?;
            (value <= eps).then_some(path)
        }
        Variant::WF => weak::continuous_witness(p, q, eps, false)?,
        Variant::WwF => weak::continuous_witness(p, q, eps, true)?,
        Variant::DwF => weak::discrete_witness(p, q, eps, false)?,
        Variant::DwwF => weak::discrete_witness(p, q, eps, true)?,
    };
    let Some(path) = path else {
        return Err(Error::NoWitness(eps.to_string()));
    };
    let mut m = Matching { variant, path, width: Dist::ZERO };
    m.width = m.validate(p, q)?;
    debug_assert!(m.width <= eps || m.width.is_zero());
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{frac, rat};

    fn c(v: &[i64]) -> Curve {
        Curve::from_ints(v).unwrap()
    }

    fn d(n: i64) -> Dist {
        Dist::from_int(n)
    }

    #[test]
    fn frechet_examples() {
        assert!(decide_frechet(&c(&[0, 10]), &c(&[1, 9]), rat(1)).unwrap());
        assert!(!decide_frechet(&c(&[0, 10]), &c(&[1, 9]), frac(1, 2)).unwrap());
        assert_eq!(frechet_exact(&c(&[0, 10]), &c(&[1, 9])).unwrap(), d(1));
        assert_eq!(frechet_exact(&c(&[0, 10, 0]), &c(&[0, 10])).unwrap(), d(10));
        assert_eq!(frechet_exact(&c(&[0, 10, 0]), &c(&[0, 10, 0])).unwrap(), d(0));
        assert_eq!(frechet_exact(&c(&[3, 1, 4, 1, 5]), &c(&[3, 1, 4, 1, 5])).unwrap(), d(0));
    }

    #[test]
    fn discrete_examples() {
        assert_eq!(discrete_frechet_exact(&c(&[0, 10]), &c(&[0, 10])).unwrap(), d(0));
        assert_eq!(discrete_frechet_exact(&c(&[0]), &c(&[3])).unwrap(), d(3));
        assert_eq!(discrete_frechet_exact(&c(&[0, 10, 4]), &c(&[1, 9, 3])).unwrap(), d(1));
    }

    #[test]
    fn partial_examples() {
        for eps in [rat(0), rat(3)] {
            assert!(decide_partial_frechet(&c(&[5]), &c(&[0, 10]), eps, false).unwrap());
        }
        assert_eq!(partial_frechet_exact(&c(&[0, 10]), &c(&[7, 0, 10, 3]), false).unwrap(), d(0));
        assert_eq!(partial_frechet_exact(&c(&[0, 10]), &c(&[4, 6]), false).unwrap(), d(4));
    }

    #[test]
    fn weak_examples() {
        assert_eq!(weak_frechet_exact(&c(&[0, 10]), &c(&[0, 5, 2, 10]), true).unwrap(), d(0));
        assert_eq!(weak_frechet_exact(&c(&[0, 10]), &c(&[1, 9]), true).unwrap(), d(1));
        assert!(decide_discrete_weak_frechet(&c(&[0]), &c(&[0]), rat(0), true).unwrap());
        assert_eq!(discrete_weak_frechet_exact(&c(&[0, 10]), &c(&[10, 0]), true).unwrap(), d(10));
    }

    #[test]
    fn hausdorff_examples() {
        assert_eq!(hausdorff_image_1d(&c(&[0, 10]), &c(&[1, 9])).unwrap(), rat(1));
        assert_eq!(hausdorff_image_1d(&c(&[0, 4, 2, 10]), &c(&[0, 10])).unwrap(), rat(0));
    }

    #[test]
    fn critical_value_examples() {
        let cv = critical_values(&c(&[0, 10]), &c(&[1, 9])).unwrap();
        for v in [0, 1, 4, 5, 9] {
            assert!(cv.contains(&d(v)), "missing {v}");
        }
        assert!(cv.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn witness_examples() {
        let m = extract_matching(&c(&[0, 10]), &c(&[1, 9]), rat(1), Variant::F).unwrap();
        assert!(m.width <= d(1));
        let diag = extract_matching(&c(&[0, 10, 4]), &c(&[0, 10, 4]), rat(0), Variant::F).unwrap();
        assert_eq!(diag.width, d(0));
        assert!(matches!(
            extract_matching(&c(&[0, 10]), &c(&[1, 9]), frac(1, 2), Variant::F),
            Err(Error::NoWitness(_))
        ));
        assert_eq!(m.to_json(), r#"{"variant":"F","width":"1","path":[[1,1],[2,2]]}"#);
        assert_eq!(Matching::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn two_dimensional_frechet() {
        let p = Curve::from_int_points(&[(0, 0), (4, 0)]).unwrap();
        let q = Curve::from_int_points(&[(0, 1), (4, 1)]).unwrap();
        assert_eq!(frechet_exact(&p, &q).unwrap(), d(1));
        let r = Curve::from_int_points(&[(0, 0), (1, 1)]).unwrap();
        let s = Curve::from_int_points(&[(0, 0), (0, 0)]).unwrap();
        assert_eq!(frechet_exact(&r, &s).unwrap().to_string(), "sqrt(2)");
    }
}
