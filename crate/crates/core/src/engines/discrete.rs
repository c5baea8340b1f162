//! Discrete Fréchet and discrete partial Fréchet by max-min dynamic programming.

use super::geom::{dist2, Frame};
use crate::curve::{Curve, Dim, ParamPoint};
use crate::error::Result;
use crate::numeric::{Dist, Rational128};

/// Pairwise vertex cost in the integer frame: `|a−b|` in 1D, squared distance in 2D.
/// Both are monotone in the true distance.
pub(crate) struct CostGrid {
    pub frame: Frame,
}

impl CostGrid {
    pub fn new(p: &Curve, q: &Curve) -> Result<CostGrid> {
        Ok(CostGrid { frame: Frame::new(p, q, 1)? })
    }

    #[inline]
    pub fn cost(&self, i: usize, j: usize) -> i128 {
        let (a, b) = (self.frame.p[i], self.frame.q[j]);
        match self.frame.dim {
            Dim::One => (a[0] as i128 - b[0] as i128).abs(),
            Dim::Two => dist2(a, b),
        }
    }

    pub fn to_dist(&self, c: i128) -> Result<Dist> {
        match self.frame.dim {
            Dim::One => Ok(self.frame.unscale_abs(c as i64)),
            Dim::Two => self.frame.unscale_sq(Rational128::from_integer(c)),
        }
    }

    pub fn n(&self) -> usize {
        self.frame.p.len()
    }

    pub fn m(&self) -> usize {
        self.frame.q.len()
    }
}

/// Max-min DP in the cost unit. With `partial`, the coupling may start at any
/// vertex of `Q` and end at any later one.
fn dp_value(g: &CostGrid, partial: bool) -> i128 {
    let (n, m) = (g.n(), g.m());
    let mut row = vec![0i128; m];
    for j in 0..m {
        let c = g.cost(0, j);
        row[j] = if j == 0 || partial { c } else { c.max(row[j - 1]) };
    }
    for i in 1..n {
        let mut diag = row[0];
        row[0] = g.cost(i, 0).max(row[0]);
        for j in 1..m {
            let up = row[j];
            let best = up.min(diag).min(row[j - 1]);
            diag = up;
            row[j] = g.cost(i, j).max(best);
        }
    }
    if partial {
        *row.iter().min().expect("non-empty")
    } else {
        row[m - 1]
    }
}

pub(crate) fn exact(p: &Curve, q: &Curve, partial: bool) -> Result<Dist> {
    let g = CostGrid::new(p, q)?;
    g.to_dist(dp_value(&g, partial))
}

/// Optimal coupling as 1-based index pairs.
pub(crate) fn witness(p: &Curve, q: &Curve, partial: bool) -> Result<(Dist, Vec<(ParamPoint, ParamPoint)>)> {
    let g = CostGrid::new(p, q)?;
    let (n, m) = (g.n(), g.m());
    let mut t = vec![0i128; n * m];
    for i in 0..n {
        for j in 0..m {
            let c = g.cost(i, j);
            let prev = match (i, j) {
                (0, 0) => None,
                (0, _) if partial => None,
                (0, _) => Some(t[j - 1]),
                (_, 0) => Some(t[(i - 1) * m]),
                _ => Some(t[(i - 1) * m + j].min(t[(i - 1) * m + j - 1]).min(t[i * m + j - 1])),
            };
            t[i * m + j] = prev.map_or(c, |p| p.max(c));
        }
    }
    let end_j = if partial {
        (0..m).min_by_key(|&j| (t[(n - 1) * m + j], j)).expect("non-empty")
    } else {
        m - 1
    };
    let value = t[(n - 1) * m + end_j];
    let (mut i, mut j) = (n - 1, end_j);
    let mut rev = vec![(i, j)];
    loop {
        if i == 0 && (j == 0 || partial) {
            break;
        }
        let mut cands: Vec<(usize, usize)> = Vec::with_capacity(3);
        if i > 0 && j > 0 {
            cands.push((i - 1, j - 1));
        }
        if i > 0 {
            cands.push((i - 1, j));
        }
        if j > 0 {
            cands.push((i, j - 1));
        }
        let (pi, pj) = cands.into_iter().min_by_key(|&(a, b)| t[a * m + b]).expect("has predecessor");
        i = pi;
        j = pj;
        rev.push((i, j));
    }
    rev.reverse();
    let path = rev.into_iter().map(|(a, b)| (ParamPoint::vertex(a + 1), ParamPoint::vertex(b + 1))).collect();
    Ok((g.to_dist(value)?, path))
}
