//! Exact Fréchet-distance engines for polygonal curves with rational
//! coordinates, a linear-time weak Fréchet algorithm for 1D curves, and the
//! Orthogonal Vectors gadget constructions with their gap checks.

pub mod curve;
pub mod engines;
pub mod error;
pub mod numeric;
pub mod ov;
pub mod render;
pub mod weak1d;

pub use curve::{Curve, Dim, ParamPoint, Point};
pub use engines::{
    critical_values, decide, decide_at, decide_discrete_frechet, decide_discrete_weak_frechet, decide_frechet,
    decide_partial_frechet, decide_weak_frechet, discrete_frechet_exact, discrete_weak_frechet_exact, exact,
    extract_matching, extract_matching_at, frechet_exact, hausdorff_image_1d, partial_frechet_exact,
    weak_frechet_exact, CellBoundary, DecisionDiagram, EdgePosition, FreeInterval, Matching, Variant,
};
pub use error::{Error, Result};
pub use numeric::{frac, parse_rational, rat, Dist, Rational};
pub use ov::{Construction, GadgetCurvePair, GapReport, OvInstance, TrivialityClass};
pub use render::FsdRender;
pub use weak1d::{canonicalize, weak_frechet_1d_linear, CanonicalCurve};
