//! The ε-free space over the cell grid of two curves.
//!
//! Cells are indexed `(i, j)` with `i` over edges of `P` and `j` over edges
//! of `Q` (0-based). A curve with a single vertex is treated as one
//! zero-length edge, so the grid always has at least one cell. Each cell's
//! free region is convex, so it is fully described by the free intervals on
//! its four sides.

use num_traits::Zero;

use super::geom::{free_interval, Frame, Interval, Param, Pt};
use crate::curve::{Curve, ParamPoint};
use crate::error::Result;
use crate::numeric::{exact_sqrt_i128, Dist, Rational, Rational128};

pub(crate) struct FreeSpace {
    pub frame: Frame,
    pub eps2: i128,
    pub eps_root: Option<i128>,
}

impl FreeSpace {
    pub fn new(p: &Curve, q: &Curve, eps: Dist) -> Result<FreeSpace> {
        let (frame, eps2) = Frame::with_eps(p, q, eps)?;
        let eps_root = exact_sqrt_i128(eps2);
        Ok(FreeSpace { frame, eps2, eps_root })
    }

    /// Number of cell columns (edges of `P`, at least one).
    pub fn cols(&self) -> usize {
        self.frame.p.len().saturating_sub(1).max(1)
    }

    pub fn rows(&self) -> usize {
        self.frame.q.len().saturating_sub(1).max(1)
    }

    fn p_at(&self, i: usize) -> Pt {
        self.frame.p[i.min(self.frame.p.len() - 1)]
    }

    fn q_at(&self, j: usize) -> Pt {
        self.frame.q[j.min(self.frame.q.len() - 1)]
    }

    /// Free part of the vertical side `x = i` within row `j` (along Q's edge `j`).
    #[inline]
    pub fn vertical(&self, i: usize, j: usize) -> (Option<Interval>, i128) {
        free_interval(self.q_at(j), self.q_at(j + 1), self.p_at(i), self.eps2, self.eps_root)
    }

    /// Free part of the horizontal side `y = j` within column `i` (along P's edge `i`).
    #[inline]
    pub fn horizontal(&self, i: usize, j: usize) -> (Option<Interval>, i128) {
        free_interval(self.p_at(i), self.p_at(i + 1), self.q_at(j), self.eps2, self.eps_root)
    }
}

/// One endpoint of a free interval, as a fraction of its edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgePosition {
    value: Param,
    den: i128,
}

impl EdgePosition {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64() / self.den as f64
    }

    /// The exact position in `[0, 1]` when it is rational.
    pub fn to_rational(&self) -> Option<Rational128> {
        self.value.is_exact().then(|| Rational128::new(self.value.a, self.den))
    }
}

/// A free interval `[lo, hi] ⊆ [0, 1]` on one side of a cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FreeInterval {
    pub lo: EdgePosition,
    pub hi: EdgePosition,
}

/// The free intervals on the four sides of a cell; `None` means blocked.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CellBoundary {
    pub left: Option<FreeInterval>,
    pub right: Option<FreeInterval>,
    pub bottom: Option<FreeInterval>,
    pub top: Option<FreeInterval>,
}

impl CellBoundary {
    pub fn is_blocked(&self) -> bool {
        self.left.is_none() && self.right.is_none() && self.bottom.is_none() && self.top.is_none()
    }
}

/// Materialized free-space diagram at a fixed ε.
pub struct DecisionDiagram {
    p: Curve,
    q: Curve,
    eps: Dist,
    space: FreeSpace,
}

fn wrap((iv, den): (Option<Interval>, i128)) -> Option<FreeInterval> {
    iv.map(|iv| FreeInterval {
        lo: EdgePosition { value: iv.lo, den },
        hi: EdgePosition { value: iv.hi, den },
    })
}

impl DecisionDiagram {
    pub fn new(p: &Curve, q: &Curve, eps: Rational) -> Result<DecisionDiagram> {
        if eps < Rational::zero() {
            return crate::error::domain("eps must be non-negative");
        }
        DecisionDiagram::at(p, q, Dist::from_rational(eps))
    }

    pub fn at(p: &Curve, q: &Curve, eps: Dist) -> Result<DecisionDiagram> {
        let space = FreeSpace::new(p, q, eps)?;
        Ok(DecisionDiagram { p: p.clone(), q: q.clone(), eps, space })
    }

    pub fn eps(&self) -> Dist {
        self.eps
    }

    /// `(columns, rows)` of the cell grid.
    pub fn shape(&self) -> (usize, usize) {
        (self.space.cols(), self.space.rows())
    }

    pub fn cell(&self, i: usize, j: usize) -> CellBoundary {
        CellBoundary {
            left: wrap(self.space.vertical(i, j)),
            right: wrap(self.space.vertical(i + 1, j)),
            bottom: wrap(self.space.horizontal(i, j)),
            top: wrap(self.space.horizontal(i, j + 1)),
        }
    }

    /// Whether `‖P(x) − Q(y)‖ ≤ ε`, evaluated exactly.
    pub fn is_free(&self, x: ParamPoint, y: ParamPoint) -> Result<bool> {
        let a = self.p.eval(x)?;
        let b = self.q.eval(y)?;
        Ok(a.dist2(&b) <= self.eps.squared())
    }
}
