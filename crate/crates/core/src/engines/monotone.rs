//! Monotone reachability in the free space: the continuous Fréchet and
//! partial Fréchet decisions, plus witness paths.

use std::cmp::Ordering;

use super::diagram::FreeSpace;
use super::geom::{Interval, Param};
use crate::curve::{Curve, Dim, ParamPoint};
use crate::error::{domain, Error, Result};
use crate::numeric::{Dist, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Path from `(1,1)` to `(|P|,|Q|)`.
    Full,
    /// Path from the left side `{1} × [1,|Q|]` to the right side.
    Partial,
}

type Reach = Option<Interval>;

/// `iv ∩ [from, ∞)`.
#[inline]
fn clip_from(iv: Reach, from: Param) -> Reach {
    let iv = iv?;
    let lo = if iv.lo.cmp_param(&from) == Ordering::Less { from } else { iv.lo };
    (lo.cmp_param(&iv.hi) != Ordering::Greater).then_some(Interval { lo, hi: iv.hi })
}

#[inline]
fn starts_at_zero(iv: &Reach) -> bool {
    iv.is_some_and(|iv| iv.lo == Param::int(0))
}

#[inline]
fn ends_at(iv: &Reach, den: i128) -> bool {
    iv.is_some_and(|iv| iv.hi == Param::int(den))
}

/// Reachable intervals on every cell side, kept for witness extraction.
struct Tables {
    cols: usize,
    rows: usize,
    /// `left[j * (cols + 1) + i]`: vertical side `x = i` in row `j`.
    left: Vec<(Reach, i128)>,
    /// `bottom[j * cols + i]`: horizontal side `y = j` in column `i`.
    bottom: Vec<(Reach, i128)>,
}

/// Runs the row sweep. Returns whether the target is reachable, and the full
/// tables when `keep` is set.
fn sweep(fs: &FreeSpace, mode: Mode, keep: bool) -> (bool, Option<Tables>) {
    let cols = fs.cols();
    let rows = fs.rows();
    let mut tables = keep.then(|| Tables {
        cols,
        rows,
        left: Vec::with_capacity((cols + 1) * rows),
        bottom: Vec::with_capacity(cols * (rows + 1)),
    });

    // bottom boundary row y = 0
    let mut bottom: Vec<(Reach, i128)> = Vec::with_capacity(cols);
    let mut open = true;
    for i in 0..cols {
        let (iv, den) = fs.horizontal(i, 0);
        let reach = if open && (i > 0 || starts_at_zero(&iv)) { iv } else { None };
        open = ends_at(&reach, den);
        bottom.push((reach, den));
    }

    let mut left_open = true;
    let mut any_right = false;
    let mut last_right: (Reach, i128) = (None, 1);
    for j in 0..rows {
        if let Some(t) = tables.as_mut() {
            t.bottom.extend_from_slice(&bottom);
        }
        let (v0, vden) = fs.vertical(0, j);
        let mut left = match mode {
            Mode::Partial => v0,
            Mode::Full => {
                let r = if left_open && (j > 0 || starts_at_zero(&v0)) { v0 } else { None };
                left_open = ends_at(&r, vden);
                r
            }
        };
        if let Some(t) = tables.as_mut() {
            t.left.push((left, vden));
        }
        let mut row_alive = left.is_some();
        for i in 0..cols {
            let below = bottom[i].0;
            let (right_free, rden) = fs.vertical(i + 1, j);
            let (top_free, tden) = fs.horizontal(i, j + 1);
            let right = if below.is_some() {
                right_free
            } else if let Some(l) = left {
                clip_from(right_free, l.lo)
            } else {
                None
            };
            let top = if left.is_some() {
                top_free
            } else if let Some(b) = below {
                clip_from(top_free, b.lo)
            } else {
                None
            };
            row_alive |= top.is_some();
            bottom[i] = (top, tden);
            left = right;
            if let Some(t) = tables.as_mut() {
                t.left.push((right, rden));
            }
            if i + 1 == cols {
                last_right = (right, rden);
            }
        }
        any_right |= last_right.0.is_some();
        if mode == Mode::Full && !row_alive && !keep {
            return (false, None);
        }
    }
    if let Some(t) = tables.as_mut() {
        t.bottom.extend_from_slice(&bottom);
    }
    let ok = match mode {
        Mode::Full => ends_at(&last_right.0, last_right.1),
        Mode::Partial => any_right,
    };
    (ok, tables)
}

pub(crate) fn decide(p: &Curve, q: &Curve, eps: Dist, mode: Mode) -> Result<bool> {
    let fs = FreeSpace::new(p, q, eps)?;
    if let (Dim::One, Some(e)) = (fs.frame.dim, fs.eps_root) {
        let xs: Vec<i64> = fs.frame.p.iter().map(|v| v[0]).collect();
        let ys: Vec<i64> = fs.frame.q.iter().map(|v| v[0]).collect();
        return Ok(sweep_line(&xs, &ys, e as i64, mode));
    }
    Ok(sweep(&fs, mode, false).0)
}

/// Free span of a 1D side, in units where the edge has length `len`;
/// empty when `lo > hi`.
#[derive(Clone, Copy)]
struct Span {
    lo: i64,
    hi: i64,
    len: i64,
}

impl Span {
    const NONE: Span = Span { lo: 1, hi: 0, len: 1 };

    #[inline]
    fn is_some(self) -> bool {
        self.lo <= self.hi
    }

    #[inline]
    fn from(self, lo: i64) -> Span {
        Span { lo: self.lo.max(lo), ..self }
    }
}

/// `{t : |a + t(b − a) − c| ≤ eps}` on the edge `a -> b`.
#[inline]
fn line_span(a: i64, b: i64, c: i64, eps: i64) -> Span {
    let d = b - a;
    if d == 0 {
        return if (a - c).abs() <= eps { Span { lo: 0, hi: 1, len: 1 } } else { Span::NONE };
    }
    let center = if d > 0 { c - a } else { a - c };
    let len = d.abs();
    Span { lo: (center - eps).max(0), hi: (center + eps).min(len), len }
}

/// The row sweep of [`sweep`] for collinear curves with integer ε.
fn sweep_line(xs: &[i64], ys: &[i64], eps: i64, mode: Mode) -> bool {
    let at = |v: &[i64], k: usize| v[k.min(v.len() - 1)];
    let cols = xs.len().saturating_sub(1).max(1);
    let rows = ys.len().saturating_sub(1).max(1);
    let horizontal = |i: usize, j: usize| line_span(at(xs, i), at(xs, i + 1), at(ys, j), eps);
    let vertical = |i: usize, j: usize| line_span(at(ys, j), at(ys, j + 1), at(xs, i), eps);

    let mut bottom: Vec<Span> = Vec::with_capacity(cols);
    let mut open = true;
    for i in 0..cols {
        let f = horizontal(i, 0);
        let reach = if open && f.is_some() && (i > 0 || f.lo == 0) { f } else { Span::NONE };
        open = reach.is_some() && reach.hi == reach.len;
        bottom.push(reach);
    }
    let mut left_open = true;
    let mut any_right = false;
    let mut last = Span::NONE;
    for j in 0..rows {
        let v0 = vertical(0, j);
        let mut left = match mode {
            Mode::Partial => v0,
            Mode::Full => {
                let r = if left_open && v0.is_some() && (j > 0 || v0.lo == 0) { v0 } else { Span::NONE };
                left_open = r.is_some() && r.hi == r.len;
                r
            }
        };
        let mut row_alive = left.is_some();
        let (y0, y1) = (at(ys, j), at(ys, j + 1));
        for (i, below_slot) in bottom.iter_mut().enumerate() {
            let below = *below_slot;
            if !below.is_some() && !left.is_some() {
                *below_slot = Span::NONE;
                left = Span::NONE;
                continue;
            }
            let right_free = line_span(y0, y1, at(xs, i + 1), eps);
            let top_free = line_span(at(xs, i), at(xs, i + 1), y1, eps);
            let right = if below.is_some() { right_free } else { right_free.from(left.lo) };
            let top = if left.is_some() { top_free } else { top_free.from(below.lo) };
            row_alive |= top.is_some();
            *below_slot = top;
            left = right;
        }
        last = left;
        any_right |= last.is_some();
        if mode == Mode::Full && !row_alive {
            return false;
        }
    }
    match mode {
        Mode::Full => last.is_some() && last.hi == last.len,
        Mode::Partial => any_right,
    }
}

/// A point of parameter space in grid units: `cell + num/den` on each axis.
#[derive(Clone, Copy, Debug)]
struct GridPoint {
    x: (usize, Param, i128),
    y: (usize, Param, i128),
}

fn to_param(curve_len: usize, (cell, v, den): (usize, Param, i128)) -> Result<ParamPoint> {
    if !v.is_exact() {
        return domain("witness crosses a cell side at an irrational parameter");
    }
    if curve_len == 1 {
        return Ok(ParamPoint::vertex(1));
    }
    let t = Rational::from_integer(cell as i64 + 1)
        + Rational::new(
            i64::try_from(v.a).map_err(|_| Error::TooLarge)?,
            i64::try_from(den).map_err(|_| Error::TooLarge)?,
        );
    Ok(ParamPoint(t))
}

/// Monotone witness path, start to end, in parameter space.
pub(crate) fn witness(p: &Curve, q: &Curve, eps: Dist, mode: Mode) -> Result<Option<Vec<(ParamPoint, ParamPoint)>>> {
    let fs = FreeSpace::new(p, q, eps)?;
    let (ok, tables) = sweep(&fs, mode, true);
    if !ok {
        return Ok(None);
    }
    let t = tables.expect("tables kept");
    let (cols, rows) = (t.cols, t.rows);
    let left = |i: usize, j: usize| t.left[j * (cols + 1) + i];
    let bottom = |i: usize, j: usize| t.bottom[j * cols + i];

    // Walk backwards; `on_vertical` says whether the current point lies on a
    // vertical side (entered from the cell to its left) or a horizontal one.
    let mut rev: Vec<GridPoint> = Vec::new();
    let (mut ci, mut cj, mut on_vertical);
    match mode {
        Mode::Full => {
            let (_, den) = left(cols, rows - 1);
            rev.push(GridPoint { x: (cols, Param::int(0), 1), y: (rows - 1, Param::int(den), den) });
            ci = cols;
            cj = rows - 1;
            on_vertical = true;
        }
        Mode::Partial => {
            let j = (0..rows).find(|&j| left(cols, j).0.is_some()).expect("accepted");
            let (iv, den) = left(cols, j);
            rev.push(GridPoint { x: (cols, Param::int(0), 1), y: (j, iv.expect("reachable").lo, den) });
            ci = cols;
            cj = j;
            on_vertical = true;
        }
    }
    loop {
        // the cell we entered the current point from
        let (cell_i, cell_j) = if on_vertical { (ci - 1, cj) } else { (ci, cj - 1) };
        let (l, lden) = left(cell_i, cell_j);
        let (b, bden) = bottom(cell_i, cell_j);
        let use_bottom = if on_vertical { b.is_some() } else { l.is_none() };
        if use_bottom {
            let b = b.expect("reachable bottom");
            rev.push(GridPoint { x: (cell_i, b.lo, bden), y: (cell_j, Param::int(0), 1) });
            ci = cell_i;
            cj = cell_j;
            on_vertical = false;
            if cj == 0 {
                break;
            }
        } else {
            let l = l.expect("reachable left");
            rev.push(GridPoint { x: (cell_i, Param::int(0), 1), y: (cell_j, l.lo, lden) });
            ci = cell_i;
            cj = cell_j;
            on_vertical = true;
            if ci == 0 {
                break;
            }
        }
    }
    // boundary leg back to the start
    let last = *rev.last().expect("non-empty");
    if on_vertical {
        if mode == Mode::Full {
            for j in (0..=last.y.0).rev() {
                rev.push(GridPoint { x: (0, Param::int(0), 1), y: (j, Param::int(0), 1) });
            }
        }
    } else {
        for i in (0..=last.x.0).rev() {
            rev.push(GridPoint { x: (i, Param::int(0), 1), y: (0, Param::int(0), 1) });
        }
    }
    rev.reverse();
    let mut path: Vec<(ParamPoint, ParamPoint)> = Vec::with_capacity(rev.len());
    for g in rev {
        let pt = (to_param(p.len(), g.x)?, to_param(q.len(), g.y)?);
        if path.last() != Some(&pt) {
            path.push(pt);
        }
    }
    Ok(Some(path))
}
