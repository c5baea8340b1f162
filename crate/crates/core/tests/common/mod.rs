//! Independent reference implementations used to check the engines.
//!
//! Everything here is written directly from the definitions with plain
//! rational arithmetic and none of the engines' integer tricks. All oracles
//! take 1D integer curves.

#![allow(dead_code)]

use std::collections::VecDeque;

use num_rational::Ratio;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = Ratio<i128>;

fn q(n: i64) -> Q {
    Q::from_integer(n as i128)
}

/// A single vertex is treated as a degenerate edge.
fn padded(v: &[i64]) -> Vec<i64> {
    if v.len() == 1 {
        vec![v[0], v[0]]
    } else {
        v.to_vec()
    }
}

/// `{t ∈ [0,1] : |a + t(b − a) − c| ≤ eps}`.
fn free(a: i64, b: i64, c: i64, eps: Q) -> Option<(Q, Q)> {
    let zero = Q::from_integer(0);
    let one = Q::from_integer(1);
    if a == b {
        return ((q(a) - q(c)).abs() <= eps).then_some((zero, one));
    }
    let delta = q(b) - q(a);
    let t1 = (q(c) - eps - q(a)) / delta;
    let t2 = (q(c) + eps - q(a)) / delta;
    let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
    let (lo, hi) = (lo.max(zero), hi.min(one));
    (lo <= hi).then_some((lo, hi))
}

/// Monotone reachability in the free space. `partial` starts anywhere on the
/// first column and ends anywhere on the last one.
pub fn frechet_decide(p: &[i64], qv: &[i64], eps: Q, partial: bool) -> bool {
    let p = padded(p);
    let qc = padded(qv);
    let (n, m) = (p.len() - 1, qc.len() - 1);
    let zero = Q::from_integer(0);
    let one = Q::from_integer(1);
    // left[i][j]: reachable part of side x = i over Q edge j
    let mut left = vec![vec![None::<(Q, Q)>; m]; n + 1];
    // bottom[i][j]: reachable part of side y = j over P edge i
    let mut bottom = vec![vec![None::<(Q, Q)>; m + 1]; n];
    let origin = (q(p[0]) - q(qc[0])).abs() <= eps;
    let mut open = origin;
    for j in 0..m {
        let f = free(qc[j], qc[j + 1], p[0], eps);
        left[0][j] = if partial {
            f
        } else {
            f.filter(|&(lo, _)| open && lo == zero)
        };
        open = matches!(left[0][j], Some((lo, hi)) if lo == zero && hi == one) && open;
    }
    let mut open = origin;
    for i in 0..n {
        let f = free(p[i], p[i + 1], qc[0], eps);
        bottom[i][0] = f.filter(|&(lo, _)| open && lo == zero);
        open = matches!(bottom[i][0], Some((lo, hi)) if lo == zero && hi == one) && open;
    }
    for i in 0..n {
        for j in 0..m {
            let l = left[i][j];
            let b = bottom[i][j];
            let fr = free(qc[j], qc[j + 1], p[i + 1], eps);
            let ft = free(p[i], p[i + 1], qc[j + 1], eps);
            left[i + 1][j] = match (b, l) {
                (Some(_), _) => fr,
                (None, Some((lo, _))) => fr.and_then(|(a, c)| (a.max(lo) <= c).then_some((a.max(lo), c))),
                _ => None,
            };
            bottom[i][j + 1] = match (l, b) {
                (Some(_), _) => ft,
                (None, Some((lo, _))) => ft.and_then(|(a, c)| (a.max(lo) <= c).then_some((a.max(lo), c))),
                _ => None,
            };
        }
    }
    if partial {
        return (0..m).any(|j| left[n][j].is_some());
    }
    let end = (q(p[n]) - q(qc[m])).abs() <= eps;
    end && (matches!(left[n][m - 1], Some((_, hi)) if hi == one) || matches!(bottom[n - 1][m], Some((_, hi)) if hi == one))
}

/// Every value at which some free-space event can happen, ascending.
pub fn candidates(p: &[i64], qv: &[i64]) -> Vec<Q> {
    let mut out = vec![Q::from_integer(0)];
    for &a in p {
        for &b in qv {
            out.push(q((a - b).abs()));
        }
    }
    for c in [p, qv] {
        for &a in c {
            for &b in c {
                out.push(q((a - b).abs()) / 2);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Smallest candidate accepted by a decision that is monotone in ε.
fn smallest(p: &[i64], qv: &[i64], decide: impl Fn(Q) -> bool) -> Q {
    let c = candidates(p, qv);
    let k = c.partition_point(|&e| !decide(e));
    c[k]
}

pub fn frechet(p: &[i64], qv: &[i64]) -> Q {
    smallest(p, qv, |e| frechet_decide(p, qv, e, false))
}

pub fn partial_frechet(p: &[i64], qv: &[i64]) -> Q {
    smallest(p, qv, |e| frechet_decide(p, qv, e, true))
}

/// Minimum over every monotone coupling, by exhaustive enumeration.
pub fn discrete_brute(p: &[i64], qv: &[i64]) -> i64 {
    fn go(p: &[i64], q: &[i64], i: usize, j: usize, acc: i64, best: &mut i64) {
        let acc = acc.max((p[i] - q[j]).abs());
        if acc >= *best {
            return;
        }
        if i + 1 == p.len() && j + 1 == q.len() {
            *best = acc;
            return;
        }
        if i + 1 < p.len() {
            go(p, q, i + 1, j, acc, best);
        }
        if j + 1 < q.len() {
            go(p, q, i, j + 1, acc, best);
        }
        if i + 1 < p.len() && j + 1 < q.len() {
            go(p, q, i + 1, j + 1, acc, best);
        }
    }
    let mut best = i64::MAX;
    go(p, qv, 0, 0, 0, &mut best);
    best
}

/// Free-space connectivity over cells sharing a free side. `unrestricted`
/// asks for one component touching all four borders instead of joining the
/// two corners.
pub fn weak_decide(p: &[i64], qv: &[i64], eps: Q, unrestricted: bool) -> bool {
    let p = padded(p);
    let qc = padded(qv);
    let (n, m) = (p.len() - 1, qc.len() - 1);
    let id = |i: usize, j: usize| i * m + j;
    let mut adj = vec![Vec::new(); n * m];
    for i in 0..n {
        for j in 0..m {
            if i + 1 < n && free(qc[j], qc[j + 1], p[i + 1], eps).is_some() {
                adj[id(i, j)].push(id(i + 1, j));
                adj[id(i + 1, j)].push(id(i, j));
            }
            if j + 1 < m && free(p[i], p[i + 1], qc[j + 1], eps).is_some() {
                adj[id(i, j)].push(id(i, j + 1));
                adj[id(i, j + 1)].push(id(i, j));
            }
        }
    }
    let mut comp = vec![usize::MAX; n * m];
    let mut count = 0;
    for s in 0..n * m {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut queue = VecDeque::from([s]);
        while let Some(c) = queue.pop_front() {
            for &d in &adj[c] {
                if comp[d] == usize::MAX {
                    comp[d] = count;
                    queue.push_back(d);
                }
            }
        }
        count += 1;
    }
    if !unrestricted {
        let start = (q(p[0]) - q(qc[0])).abs() <= eps;
        let end = (q(p[n]) - q(qc[m])).abs() <= eps;
        return start && end && comp[id(0, 0)] == comp[id(n - 1, m - 1)];
    }
    let mut touch = vec![0u8; count];
    for i in 0..n {
        for j in 0..m {
            let c = comp[id(i, j)];
            if i == 0 && free(qc[j], qc[j + 1], p[0], eps).is_some() {
                touch[c] |= 1;
            }
            if i + 1 == n && free(qc[j], qc[j + 1], p[n], eps).is_some() {
                touch[c] |= 2;
            }
            if j == 0 && free(p[i], p[i + 1], qc[0], eps).is_some() {
                touch[c] |= 4;
            }
            if j + 1 == m && free(p[i], p[i + 1], qc[m], eps).is_some() {
                touch[c] |= 8;
            }
        }
    }
    touch.contains(&15)
}

pub fn weak(p: &[i64], qv: &[i64], unrestricted: bool) -> Q {
    smallest(p, qv, |e| weak_decide(p, qv, e, unrestricted))
}

/// King-move connectivity of vertex pairs within `eps`.
pub fn discrete_weak_decide(p: &[i64], qv: &[i64], eps: i64, unrestricted: bool) -> bool {
    let (n, m) = (p.len(), qv.len());
    let ok = |i: usize, j: usize| (p[i] - qv[j]).abs() <= eps;
    let mut seen = vec![vec![false; m]; n];
    let mut touch = 0u8;
    let starts: Vec<(usize, usize)> = if unrestricted {
        (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).collect()
    } else {
        vec![(0, 0)]
    };
    for s in starts {
        if !ok(s.0, s.1) || seen[s.0][s.1] {
            continue;
        }
        seen[s.0][s.1] = true;
        let mut flags = 0u8;
        let mut queue = VecDeque::from([s]);
        while let Some((i, j)) = queue.pop_front() {
            flags |= (i == 0) as u8 | ((i + 1 == n) as u8) << 1 | ((j == 0) as u8) << 2 | ((j + 1 == m) as u8) << 3;
            for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    let (a, b) = (i as i64 + di, j as i64 + dj);
                    if a < 0 || b < 0 || a >= n as i64 || b >= m as i64 {
                        continue;
                    }
                    let (a, b) = (a as usize, b as usize);
                    if !seen[a][b] && ok(a, b) {
                        seen[a][b] = true;
                        queue.push_back((a, b));
                    }
                }
            }
        }
        if unrestricted {
            touch |= if flags == 15 { 15 } else { 0 };
        } else {
            return seen[n - 1][m - 1];
        }
    }
    touch == 15
}

pub fn discrete_weak(p: &[i64], qv: &[i64], unrestricted: bool) -> i64 {
    let mut costs: Vec<i64> = p.iter().flat_map(|&a| qv.iter().map(move |&b| (a - b).abs())).collect();
    costs.sort();
    costs.dedup();
    *costs.iter().find(|&&e| discrete_weak_decide(p, qv, e, unrestricted)).expect("max cost succeeds")
}

/// Random integer curve with `1..=max_len` vertices in `[lo, hi]`.
pub fn random_curve(rng: &mut ChaCha8Rng, max_len: usize, lo: i64, hi: i64) -> Vec<i64> {
    let len = rng.random_range(1..=max_len);
    (0..len).map(|_| rng.random_range(lo..=hi)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` or an integer, matching the library's output format.
pub fn show(x: Q) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
