//! Weak Fréchet variants via connectivity of the free space.
//!
//! Continuous: cells are nodes, two neighbouring cells are joined once their
//! shared side has a free point. Since every cell's free region is convex,
//! this captures connectivity of the free space exactly. Discrete: vertex
//! pairs are nodes with king-move adjacency.
//!
//! Exact values process the join events in order of their threshold, so the
//! answer is the threshold of the event that first satisfies the goal.

use std::cmp::Ordering;
use std::collections::VecDeque;

use super::discrete::CostGrid;
use super::geom::{cmp_frac, dist2, point_segment_dist2, Frame, Pt};
use crate::curve::{Curve, ParamPoint};
use crate::error::Result;
use crate::numeric::{Dist, Rational, Rational128};

const LEFT: u8 = 1;
const RIGHT: u8 = 2;
const BOTTOM: u8 = 4;
const TOP: u8 = 8;
const ALL_SIDES: u8 = LEFT | RIGHT | BOTTOM | TOP;

struct UnionFind {
    parent: Vec<u32>,
    flags: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n as u32).collect(), flags: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let up = self.parent[self.parent[x] as usize];
            self.parent[x] = up;
            x = up as usize;
        }
        x
    }

    /// Returns the root of the merged set.
    fn union(&mut self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra as u32;
            self.flags[ra] |= self.flags[rb];
        }
        ra
    }

    fn mark(&mut self, a: usize, flag: u8) -> u8 {
        let r = self.find(a);
        self.flags[r] |= flag;
        self.flags[r]
    }
}

#[derive(Clone, Copy)]
enum Event {
    Join(usize, usize),
    Mark(usize, u8),
}

/// An event with its squared-distance threshold `num / den`.
struct Timed {
    num: i128,
    den: i128,
    event: Event,
}

fn sort_events(events: &mut [Timed]) {
    events.sort_by(|a, b| cmp_frac(a.num, a.den, b.num, b.den));
}

fn below(t: &Timed, eps2: i128) -> bool {
    cmp_frac(t.num, t.den, eps2, 1) != Ordering::Greater
}

/// Cell-graph geometry for the continuous variants.
struct CellGraph {
    frame: Frame,
    cols: usize,
    rows: usize,
}

impl CellGraph {
    fn new(frame: Frame) -> CellGraph {
        let cols = frame.p.len().saturating_sub(1).max(1);
        let rows = frame.q.len().saturating_sub(1).max(1);
        CellGraph { frame, cols, rows }
    }

    fn p(&self, i: usize) -> Pt {
        self.frame.p[i.min(self.frame.p.len() - 1)]
    }

    fn q(&self, j: usize) -> Pt {
        self.frame.q[j.min(self.frame.q.len() - 1)]
    }

    fn id(&self, i: usize, j: usize) -> usize {
        j * self.cols + i
    }

    /// Vertical side `x = i` in row `j`.
    fn vertical(&self, i: usize, j: usize) -> (i128, i128) {
        point_segment_dist2(self.p(i), self.q(j), self.q(j + 1))
    }

    /// Horizontal side `y = j` in column `i`.
    fn horizontal(&self, i: usize, j: usize) -> (i128, i128) {
        point_segment_dist2(self.q(j), self.p(i), self.p(i + 1))
    }

    fn events(&self, unrestricted: bool) -> Vec<Timed> {
        let (cols, rows) = (self.cols, self.rows);
        let mut ev = Vec::with_capacity(2 * cols * rows + 2 * (cols + rows));
        for j in 0..rows {
            for i in 0..cols {
                if i + 1 < cols {
                    let (num, den) = self.vertical(i + 1, j);
                    ev.push(Timed { num, den, event: Event::Join(self.id(i, j), self.id(i + 1, j)) });
                }
                if j + 1 < rows {
                    let (num, den) = self.horizontal(i, j + 1);
                    ev.push(Timed { num, den, event: Event::Join(self.id(i, j), self.id(i, j + 1)) });
                }
            }
        }
        if unrestricted {
            for j in 0..rows {
                let (num, den) = self.vertical(0, j);
                ev.push(Timed { num, den, event: Event::Mark(self.id(0, j), LEFT) });
                let (num, den) = self.vertical(cols, j);
                ev.push(Timed { num, den, event: Event::Mark(self.id(cols - 1, j), RIGHT) });
            }
            for i in 0..cols {
                let (num, den) = self.horizontal(i, 0);
                ev.push(Timed { num, den, event: Event::Mark(self.id(i, 0), BOTTOM) });
                let (num, den) = self.horizontal(i, rows);
                ev.push(Timed { num, den, event: Event::Mark(self.id(i, rows - 1), TOP) });
            }
        }
        ev
    }

    fn endpoint_sq(&self) -> i128 {
        let start = dist2(self.frame.p[0], self.frame.q[0]);
        let end = dist2(*self.frame.p.last().expect("non-empty"), *self.frame.q.last().expect("non-empty"));
        start.max(end)
    }
}

/// Processes events in order; returns the index of the event that first
/// reaches the goal, or `None` if the goal holds before any event.
fn first_success(uf: &mut UnionFind, events: &[Timed], start: usize, end: usize, unrestricted: bool) -> Option<Option<usize>> {
    if !unrestricted && uf.find(start) == uf.find(end) {
        return Some(None);
    }
    for (k, t) in events.iter().enumerate() {
        let done = match t.event {
            Event::Join(a, b) => {
                let r = uf.union(a, b);
                if unrestricted {
                    uf.flags[r] == ALL_SIDES
                } else {
                    uf.find(start) == uf.find(end)
                }
            }
            Event::Mark(a, f) => uf.mark(a, f) == ALL_SIDES,
        };
        if done {
            return Some(Some(k));
        }
    }
    None
}

pub(crate) fn continuous_exact(p: &Curve, q: &Curve, unrestricted: bool) -> Result<Dist> {
    let g = CellGraph::new(Frame::new(p, q, 1)?);
    let mut events = g.events(unrestricted);
    sort_events(&mut events);
    let mut uf = UnionFind::new(g.cols * g.rows);
    let hit = first_success(&mut uf, &events, 0, g.id(g.cols - 1, g.rows - 1), unrestricted)
        .expect("the whole free space is connected at the largest threshold");
    let (num, den) = match hit {
        Some(k) => (events[k].num, events[k].den),
        None => (0, 1),
    };
    let mut sq = Rational128::new(num, den);
    if !unrestricted {
        sq = sq.max(Rational128::from_integer(g.endpoint_sq()));
    }
    g.frame.unscale_sq(sq)
}

pub(crate) fn continuous_decide(p: &Curve, q: &Curve, eps: Dist, unrestricted: bool) -> Result<bool> {
    let (frame, eps2) = Frame::with_eps(p, q, eps)?;
    let g = CellGraph::new(frame);
    if !unrestricted && g.endpoint_sq() > eps2 {
        return Ok(false);
    }
    let events: Vec<Timed> = g.events(unrestricted).into_iter().filter(|t| below(t, eps2)).collect();
    let mut uf = UnionFind::new(g.cols * g.rows);
    Ok(first_success(&mut uf, &events, 0, g.id(g.cols - 1, g.rows - 1), unrestricted).is_some())
}

/// King-move graph on vertex pairs.
struct NodeGraph {
    costs: CostGrid,
}

impl NodeGraph {
    fn id(&self, i: usize, j: usize) -> usize {
        i * self.costs.m() + j
    }

    fn sides(&self, i: usize, j: usize) -> u8 {
        let mut f = 0;
        if i == 0 {
            f |= LEFT;
        }
        if i + 1 == self.costs.n() {
            f |= RIGHT;
        }
        if j == 0 {
            f |= BOTTOM;
        }
        if j + 1 == self.costs.m() {
            f |= TOP;
        }
        f
    }

    /// Activates pairs with cost at most `limit` (all when `None`) in
    /// ascending order; returns the cost at which the goal is first met.
    fn run(&self, limit: Option<i128>, unrestricted: bool) -> Option<i128> {
        let (n, m) = (self.costs.n(), self.costs.m());
        let mut order: Vec<(i128, u32)> = (0..n * m)
            .map(|k| (self.costs.cost(k / m, k % m), k as u32))
            .filter(|(c, _)| limit.is_none_or(|l| *c <= l))
            .collect();
        order.sort_unstable();
        let mut uf = UnionFind::new(n * m);
        let mut active = vec![false; n * m];
        let (start, end) = (0, self.id(n - 1, m - 1));
        for (c, k) in order {
            let k = k as usize;
            let (i, j) = (k / m, k % m);
            active[k] = true;
            uf.mark(k, self.sides(i, j));
            for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    let (a, b) = (i as i64 + di, j as i64 + dj);
                    if (di, dj) == (0, 0) || a < 0 || b < 0 || a >= n as i64 || b >= m as i64 {
                        continue;
                    }
                    let other = self.id(a as usize, b as usize);
                    if active[other] {
                        uf.union(k, other);
                    }
                }
            }
            let done = if unrestricted {
                let r = uf.find(k);
                uf.flags[r] == ALL_SIDES
            } else {
                active[start] && active[end] && uf.find(start) == uf.find(end)
            };
            if done {
                return Some(c);
            }
        }
        None
    }
}

pub(crate) fn discrete_exact(p: &Curve, q: &Curve, unrestricted: bool) -> Result<Dist> {
    let g = NodeGraph { costs: CostGrid::new(p, q)? };
    let c = g.run(None, unrestricted).expect("the full grid satisfies every goal");
    g.costs.to_dist(c)
}

pub(crate) fn discrete_decide(p: &Curve, q: &Curve, eps: Dist, unrestricted: bool) -> Result<bool> {
    let g = NodeGraph { costs: CostGrid::new(p, q)? };
    // compare in the cost unit by locating the largest admissible cost
    let limit = max_cost_within(&g.costs, eps)?;
    Ok(match limit {
        Some(l) => g.run(Some(l), unrestricted).is_some(),
        None => false,
    })
}

/// Largest vertex-pair cost whose distance is at most `eps`, if any.
fn max_cost_within(costs: &CostGrid, eps: Dist) -> Result<Option<i128>> {
    let mut best: Option<i128> = None;
    for i in 0..costs.n() {
        for j in 0..costs.m() {
            let c = costs.cost(i, j);
            if best.is_some_and(|b| b >= c) {
                continue;
            }
            if costs.to_dist(c)? <= eps {
                best = Some(c);
            }
        }
    }
    Ok(best)
}

/// A (not necessarily monotone) witness path for the weak variants.
pub(crate) fn continuous_witness(p: &Curve, q: &Curve, eps: Dist, unrestricted: bool) -> Result<Option<Vec<(ParamPoint, ParamPoint)>>> {
    if !continuous_decide(p, q, eps, unrestricted)? {
        return Ok(None);
    }
    let (frame, eps2) = Frame::with_eps(p, q, eps)?;
    let g = CellGraph::new(frame);
    let fs = super::diagram::FreeSpace::new(p, q, eps)?;
    let (cols, rows) = (g.cols, g.rows);
    let n_cells = cols * rows;
    // adjacency through free shared sides
    let open_v = |i: usize, j: usize| below_pair(g.vertical(i, j), eps2);
    let open_h = |i: usize, j: usize| below_pair(g.horizontal(i, j), eps2);
    let neighbours = |c: usize| {
        let (i, j) = (c % cols, c / cols);
        let mut out = Vec::with_capacity(4);
        if i > 0 && open_v(i, j) {
            out.push((c - 1, Side::V(i, j)));
        }
        if i + 1 < cols && open_v(i + 1, j) {
            out.push((c + 1, Side::V(i + 1, j)));
        }
        if j > 0 && open_h(i, j) {
            out.push((c - cols, Side::H(i, j)));
        }
        if j + 1 < rows && open_h(i, j + 1) {
            out.push((c + cols, Side::H(i, j + 1)));
        }
        out
    };
    let bfs = |from: usize, to: usize| -> Vec<Side> {
        let mut prev: Vec<Option<(usize, Side)>> = vec![None; n_cells];
        let mut seen = vec![false; n_cells];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(c) = queue.pop_front() {
            if c == to {
                break;
            }
            for (d, side) in neighbours(c) {
                if !seen[d] {
                    seen[d] = true;
                    prev[d] = Some((c, side));
                    queue.push_back(d);
                }
            }
        }
        let mut sides = Vec::new();
        let mut c = to;
        while c != from {
            let (b, side) = prev[c].expect("connected");
            sides.push(side);
            c = b;
        }
        sides.reverse();
        sides
    };
    let point_on = |side: Side| -> Result<(ParamPoint, ParamPoint)> {
        let (iv, den, i, j, vertical) = match side {
            Side::V(i, j) => {
                let (iv, den) = fs.vertical(i, j);
                (iv, den, i, j, true)
            }
            Side::H(i, j) => {
                let (iv, den) = fs.horizontal(i, j);
                (iv, den, i, j, false)
            }
        };
        let iv = iv.expect("open side has a free interval");
        if !iv.lo.is_exact() {
            return crate::error::domain("witness crosses a cell side at an irrational parameter");
        }
        let frac = Rational::new(iv.lo.a as i64, den as i64);
        let along = |len: usize, cell: usize, f: Rational| {
            if len == 1 {
                ParamPoint::vertex(1)
            } else {
                ParamPoint(Rational::from_integer(cell as i64 + 1) + f)
            }
        };
        let corner = |len: usize, k: usize| ParamPoint::vertex(k.min(len - 1) + 1);
        Ok(if vertical {
            (corner(p.len(), i), along(q.len(), j, frac))
        } else {
            (along(p.len(), i, frac), corner(q.len(), j))
        })
    };

    let mut path: Vec<(ParamPoint, ParamPoint)> = Vec::new();
    let push = |path: &mut Vec<(ParamPoint, ParamPoint)>, pt: (ParamPoint, ParamPoint)| {
        if path.last() != Some(&pt) {
            path.push(pt);
        }
    };
    if !unrestricted {
        push(&mut path, (ParamPoint::vertex(1), ParamPoint::vertex(1)));
        for side in bfs(0, g.id(cols - 1, rows - 1)) {
            push(&mut path, point_on(side)?);
        }
        push(&mut path, (ParamPoint::vertex(p.len()), ParamPoint::vertex(q.len())));
        return Ok(Some(path));
    }
    // find a component touching all four sides, then tour one free point on each
    let border: Vec<(usize, Side)> = (0..rows)
        .filter(|&j| open_v(0, j))
        .map(|j| (g.id(0, j), Side::V(0, j)))
        .chain((0..rows).filter(|&j| open_v(cols, j)).map(|j| (g.id(cols - 1, j), Side::V(cols, j))))
        .chain((0..cols).filter(|&i| open_h(i, 0)).map(|i| (g.id(i, 0), Side::H(i, 0))))
        .chain((0..cols).filter(|&i| open_h(i, rows)).map(|i| (g.id(i, rows - 1), Side::H(i, rows))))
        .collect();
    let mut uf = UnionFind::new(n_cells);
    for c in 0..n_cells {
        for (d, _) in neighbours(c) {
            uf.union(c, d);
        }
    }
    for &(c, side) in &border {
        let f = match side {
            Side::V(0, _) => LEFT,
            Side::V(_, _) => RIGHT,
            Side::H(_, 0) => BOTTOM,
            Side::H(_, _) => TOP,
        };
        uf.mark(c, f);
    }
    let mut root = usize::MAX;
    for c in 0..n_cells {
        let r = uf.find(c);
        if uf.flags[r] == ALL_SIDES {
            root = r;
            break;
        }
    }
    let mut stops: Vec<(usize, Side)> = Vec::new();
    for want in [LEFT, BOTTOM, RIGHT, TOP] {
        let stop = border
            .iter()
            .copied()
            .find(|&(c, side)| {
                let f = match side {
                    Side::V(0, _) => LEFT,
                    Side::V(_, _) => RIGHT,
                    Side::H(_, 0) => BOTTOM,
                    Side::H(_, _) => TOP,
                };
                f == want && uf.find(c) == root
            })
            .expect("component touches every side");
        stops.push(stop);
    }
    let mut cell = stops[0].0;
    push(&mut path, point_on(stops[0].1)?);
    for &(c, side) in &stops[1..] {
        for s in bfs(cell, c) {
            push(&mut path, point_on(s)?);
        }
        push(&mut path, point_on(side)?);
        cell = c;
    }
    Ok(Some(path))
}

#[derive(Clone, Copy, Debug)]
enum Side {
    V(usize, usize),
    H(usize, usize),
}

fn below_pair((num, den): (i128, i128), eps2: i128) -> bool {
    cmp_frac(num, den, eps2, 1) != Ordering::Greater
}

/// Discrete weak witness: a walk through king-adjacent pairs within `eps`.
pub(crate) fn discrete_witness(p: &Curve, q: &Curve, eps: Dist, unrestricted: bool) -> Result<Option<Vec<(ParamPoint, ParamPoint)>>> {
    if !discrete_decide(p, q, eps, unrestricted)? {
        return Ok(None);
    }
    let costs = CostGrid::new(p, q)?;
    let limit = max_cost_within(&costs, eps)?.expect("decided true");
    let (n, m) = (costs.n(), costs.m());
    let free = |i: usize, j: usize| costs.cost(i, j) <= limit;
    let bfs = |from: (usize, usize), to: (usize, usize)| -> Vec<(usize, usize)> {
        let mut prev = vec![usize::MAX; n * m];
        let mut queue = VecDeque::from([from]);
        prev[from.0 * m + from.1] = from.0 * m + from.1;
        while let Some((i, j)) = queue.pop_front() {
            if (i, j) == to {
                break;
            }
            for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    let (a, b) = (i as i64 + di, j as i64 + dj);
                    if a < 0 || b < 0 || a >= n as i64 || b >= m as i64 {
                        continue;
                    }
                    let (a, b) = (a as usize, b as usize);
                    if prev[a * m + b] == usize::MAX && free(a, b) {
                        prev[a * m + b] = i * m + j;
                        queue.push_back((a, b));
                    }
                }
            }
        }
        let mut out = vec![to];
        let mut k = to.0 * m + to.1;
        while k != from.0 * m + from.1 {
            k = prev[k];
            out.push((k / m, k % m));
        }
        out.reverse();
        out
    };
    let mut walk: Vec<(usize, usize)> = Vec::new();
    if !unrestricted {
        walk = bfs((0, 0), (n - 1, m - 1));
    } else {
        let g = NodeGraph { costs: CostGrid::new(p, q)? };
        let mut uf = UnionFind::new(n * m);
        for i in 0..n {
            for j in 0..m {
                if !free(i, j) {
                    continue;
                }
                uf.mark(g.id(i, j), g.sides(i, j));
                for (a, b) in [(i + 1, j), (i, j + 1), (i + 1, j + 1)] {
                    if a < n && b < m && free(a, b) {
                        uf.union(g.id(i, j), g.id(a, b));
                    }
                }
                if i + 1 < n && j > 0 && free(i + 1, j - 1) {
                    uf.union(g.id(i, j), g.id(i + 1, j - 1));
                }
            }
        }
        let root = (0..n * m).find(|&k| free(k / m, k % m) && {
            let r = uf.find(k);
            uf.flags[r] == ALL_SIDES
        });
        let root = uf.find(root.expect("decided true"));
        let mut stops = Vec::new();
        for want in [LEFT, BOTTOM, RIGHT, TOP] {
            let k = (0..n * m)
                .find(|&k| free(k / m, k % m) && g.sides(k / m, k % m) & want != 0 && uf.find(k) == root)
                .expect("component touches every side");
            stops.push((k / m, k % m));
        }
        for w in stops.windows(2) {
            let leg = bfs(w[0], w[1]);
            if walk.is_empty() {
                walk.extend(leg);
            } else {
                walk.extend(leg.into_iter().skip(1));
            }
        }
    }
    Ok(Some(walk.into_iter().map(|(i, j)| (ParamPoint::vertex(i + 1), ParamPoint::vertex(j + 1))).collect()))
}
