//! Gadget curves encoding an OV instance for each distance variant.
//!
//! 1D constructions for the partial and full Fréchet reductions are built as
//! raw vertex sequences with named bookmarks attached to specific vertices,
//! then normalized once with the bookmarks carried along. The weak-variant
//! constructions are used verbatim.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::instance::OvInstance;
use crate::curve::{between, Curve};
use crate::engines::{critical_values, Variant};
use crate::error::{domain, Error, Result};
use crate::numeric::{rat, Rational};

/// Which reduction produced a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Construction {
    /// Partial Fréchet.
    Partial,
    /// Fréchet, built on top of the partial construction.
    Frechet,
    /// The Fréchet construction subdivided for the discrete distance.
    Discrete,
    /// Discrete weak Fréchet, 1D.
    Weak1d,
    /// Continuous weak Fréchet, 2D.
    Weak2d,
}

impl Construction {
    pub const ALL: [Construction; 5] = [
        Construction::Partial,
        Construction::Frechet,
        Construction::Discrete,
        Construction::Weak1d,
        Construction::Weak2d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::Partial => "partial",
            Construction::Frechet => "frechet",
            Construction::Discrete => "discrete",
            Construction::Weak1d => "weak1d",
            Construction::Weak2d => "weak2d",
        }
    }

    /// Distance variants whose gap this construction exhibits.
    pub fn variants(self) -> &'static [Variant] {
        match self {
            Construction::Partial => &[Variant::PartialF],
            Construction::Frechet => &[Variant::F],
            Construction::Discrete => &[Variant::DF],
            Construction::Weak1d => &[Variant::DwF, Variant::DwwF],
            Construction::Weak2d => &[Variant::WF, Variant::WwF],
        }
    }

    pub fn build(self, inst: &OvInstance) -> Result<GadgetCurvePair> {
        match self {
            Construction::Partial => build_partial_reduction(inst),
            Construction::Frechet => build_full_reduction(inst),
            Construction::Discrete => build_discrete_reduction(inst),
            Construction::Weak1d => build_weak_discrete_1d(inst),
            Construction::Weak2d => build_weak_continuous_2d(inst),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Construction> {
        Construction::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown construction {s:?}")))
    }
}

impl Serialize for Construction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Construction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Construction, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A reduction's output: the curve pair plus 1-based vertex bookmarks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetCurvePair {
    pub construction: Construction,
    #[serde(rename = "P")]
    pub p: Curve,
    #[serde(rename = "Q")]
    pub q: Curve,
    pub bookmarks: BTreeMap<String, usize>,
}

impl GadgetCurvePair {
    pub fn variants(&self) -> &'static [Variant] {
        self.construction.variants()
    }

    pub fn bookmark(&self, name: &str) -> Option<usize> {
        self.bookmarks.get(name).copied()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("gadget serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<GadgetCurvePair> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Which curve a gadget belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    P,
    Q,
}

/// Vertex sequence under construction, with names attached to vertices.
#[derive(Clone, Default)]
struct Tagged {
    vals: Vec<i64>,
    tags: Vec<Vec<String>>,
}

impl Tagged {
    fn push(&mut self, vals: &[i64]) -> &mut Self {
        for &v in vals {
            self.vals.push(v);
            self.tags.push(Vec::new());
        }
        self
    }

    fn append(&mut self, other: Tagged) -> &mut Self {
        self.vals.extend(other.vals);
        self.tags.extend(other.tags);
        self
    }

    fn len(&self) -> usize {
        self.vals.len()
    }

    fn tag(&mut self, pos: usize, name: impl Into<String>) {
        self.tags[pos].push(name.into());
    }

    fn tag_last(&mut self, name: impl Into<String>) {
        let k = self.len() - 1;
        self.tag(k, name);
    }

    fn reversed(&self) -> Tagged {
        Tagged {
            vals: self.vals.iter().rev().copied().collect(),
            tags: self.tags.iter().rev().cloned().collect(),
        }
    }

    /// Collinear-vertex removal carrying names to the equal neighbour that
    /// survives. Losing a name is a construction bug.
    fn normalize(self) -> Result<(Vec<i64>, BTreeMap<String, usize>)> {
        let mut vals: Vec<i64> = Vec::with_capacity(self.vals.len());
        let mut tags: Vec<Vec<String>> = Vec::with_capacity(self.vals.len());
        for (v, mut t) in self.vals.into_iter().zip(self.tags) {
            while vals.len() >= 2 && between(vals[vals.len() - 2], vals[vals.len() - 1], v) {
                let top = vals.pop().expect("len >= 2");
                let moved = tags.pop().expect("parallel");
                if moved.is_empty() {
                    continue;
                }
                if top == v {
                    t.extend(moved);
                } else if top == *vals.last().expect("len >= 1") {
                    tags.last_mut().expect("len >= 1").extend(moved);
                } else {
                    return domain(format!("bookmarks {moved:?} removed by normalization"));
                }
            }
            vals.push(v);
            tags.push(t);
        }
        let mut marks = BTreeMap::new();
        for (k, names) in tags.into_iter().enumerate() {
            for name in names {
                marks.insert(name, k + 1);
            }
        }
        Ok((vals, marks))
    }
}

fn bits_or_all(d: usize, bit: bool) -> Vec<bool> {
    vec![bit; d]
}

fn raw_p_vector(u: &[bool]) -> Vec<i64> {
    let mut v = vec![0];
    for &b in u {
        v.extend([10 - 2 * b as i64, 4]);
    }
    v.push(0);
    v
}

fn raw_q_vector(x: &[bool]) -> Vec<i64> {
    let mut v = vec![1];
    for &b in x {
        v.extend([9 + 2 * b as i64, 3]);
    }
    v.push(1);
    v
}

/// `⟨lo⟩ ∘ d·⟨hi, mid⟩ ∘ ⟨lo⟩`.
fn raw_zigzag(lo: i64, hi: i64, mid: i64, d: usize) -> Vec<i64> {
    let mut v = vec![lo];
    for _ in 0..d {
        v.extend([hi, mid]);
    }
    v.push(lo);
    v
}

fn p_star(d: usize) -> Vec<i64> {
    raw_zigzag(2, 10, 4, d)
}

fn q_star(d: usize) -> Vec<i64> {
    raw_zigzag(3, 9, 5, d)
}

fn p_plus(d: usize) -> Vec<i64> {
    raw_zigzag(4, 8, 6, d)
}

const Q_PLUS: [i64; 3] = [5, 7, 5];

fn normalized(vals: Vec<i64>) -> Curve {
    Curve::from_ints(&vals).and_then(|c| c.normalize_collinear()).expect("gadgets are non-empty 1D curves")
}

/// `P_u` or `Q_v` for one vector, normalized.
pub fn build_vector_gadget(bits: &[bool], side: Side) -> Result<Curve> {
    if bits.is_empty() {
        return domain("vector dimension must be at least 1");
    }
    Ok(normalized(match side {
        Side::P => raw_p_vector(bits),
        Side::Q => raw_q_vector(bits),
    }))
}

/// The `*` separator gadget of either side, normalized.
pub fn build_star_gadget(d: usize, side: Side) -> Result<Curve> {
    if d == 0 {
        return domain("vector dimension must be at least 1");
    }
    Ok(normalized(match side {
        Side::P => p_star(d),
        Side::Q => q_star(d),
    }))
}

/// The `+` gadget of either side, normalized.
pub fn build_plus_gadget(d: usize, side: Side) -> Result<Curve> {
    if d == 0 {
        return domain("vector dimension must be at least 1");
    }
    Ok(normalized(match side {
        Side::P => p_plus(d),
        Side::Q => Q_PLUS.to_vec(),
    }))
}

/// Separator between consecutive vector gadgets on `P`; `a` and `b` mark the
/// 2s around the doubled `+` gadget.
fn p_sep(d: usize, i: usize) -> Tagged {
    let mut t = Tagged::default();
    t.push(&[0]).push(&p_star(d)).push(&[2]).push(&p_plus(d)).push(&[2]);
    t.tag_last(format!("a_{i}"));
    t.push(&p_plus(d)).push(&p_plus(d)).push(&[2]);
    t.tag_last(format!("b_{i}"));
    t.push(&p_plus(d)).push(&[2]).push(&p_star(d)).push(&[0]);
    t
}

/// Entry piece of `P` without bookmarks; `a`/`b` positions are returned.
fn p_enter(d: usize) -> (Tagged, usize, usize) {
    let mut t = Tagged::default();
    for _ in 0..=d {
        t.push(&[4, 10]);
    }
    t.push(&[2]);
    let a = t.len() - 1;
    t.push(&p_plus(d)).push(&p_plus(d)).push(&[2]);
    let b = t.len() - 1;
    t.push(&p_plus(d)).push(&[2]).push(&p_star(d)).push(&[0]);
    (t, a, b)
}

fn q_sep(d: usize, k: usize) -> Tagged {
    let mut t = Tagged::default();
    t.push(&[1]);
    t.tag_last(format!("s'_{k}"));
    t.push(&q_star(d)).push(&[1]);
    // second Q*: its last surviving 5 sits two before the final 5
    let start = t.len();
    t.push(&q_star(d));
    t.tag(start + 2 * d - 2, format!("l_{k}"));
    t.push(&q_star(d));
    let third_end = t.len() - 1;
    t.tag(third_end, format!("c_{k}"));
    t.push(&q_star(d));
    let fifth = t.len();
    t.push(&q_star(d));
    t.tag(fifth + 2, format!("r_{k}"));
    t.push(&[1]).push(&q_star(d)).push(&[1]);
    t.tag_last(format!("t'_{k}"));
    t
}

fn p_vector_tagged(u: &[bool], i: usize) -> Tagged {
    let mut t = Tagged::default();
    t.push(&raw_p_vector(u));
    t.tag(0, format!("s_{i}"));
    t.tag_last(format!("t_{i}"));
    t
}

/// Raw tagged `P` of the partial reduction.
fn raw_partial_p(inst: &OvInstance) -> Tagged {
    let d = inst.d();
    let n = inst.n();
    let (mut enter, a, b) = p_enter(d);
    enter.tag(a, "a_0");
    enter.tag(b, "b_0");
    let mut p = enter;
    for i in 0..n - 1 {
        p.append(p_vector_tagged(&inst.u()[i], i));
        p.append(p_sep(d, i + 1));
    }
    p.append(p_vector_tagged(&inst.u()[n - 1], n - 1));
    let (exit, a, b) = p_enter(d);
    let len = exit.len();
    let mut exit = exit.reversed();
    // reversed: the entry's `b` comes first and becomes `a_n`
    exit.tag(len - 1 - b, format!("a_{n}"));
    exit.tag(len - 1 - a, format!("b_{n}"));
    p.append(exit);
    p
}

fn raw_partial_q(inst: &OvInstance) -> Tagged {
    let d = inst.d();
    let (n, m) = (inst.n(), inst.m());
    let mut q = q_sep(d, 0);
    for k in 0..n + m - 1 {
        q.push(&raw_q_vector(&inst.v()[k % m]));
        q.append(q_sep(d, k + 1));
    }
    q
}

fn expect_values(curve: &Curve, marks: &BTreeMap<String, usize>, prefix: &str, value: i64) -> Result<()> {
    for (name, &k) in marks.range(prefix.to_string()..) {
        if !name.starts_with(prefix) {
            break;
        }
        if curve.coords()[k - 1] != rat(value) {
            return domain(format!("bookmark {name} at vertex {k} is not at {value}"));
        }
    }
    Ok(())
}

fn check_partial_marks(p: &Curve, q: &Curve, pm: &BTreeMap<String, usize>, qm: &BTreeMap<String, usize>) -> Result<()> {
    expect_values(p, pm, "a_", 2)?;
    expect_values(p, pm, "b_", 2)?;
    expect_values(p, pm, "s_", 0)?;
    expect_values(p, pm, "t_", 0)?;
    expect_values(q, qm, "c_", 3)?;
    expect_values(q, qm, "l_", 5)?;
    expect_values(q, qm, "r_", 5)?;
    expect_values(q, qm, "s'_", 1)?;
    expect_values(q, qm, "t'_", 1)
}

fn merge_marks(pm: BTreeMap<String, usize>, qm: BTreeMap<String, usize>) -> BTreeMap<String, usize> {
    // names are disjoint between the sides except for the Q-only primes
    let mut all = pm;
    all.extend(qm);
    all
}

/// Curves for the partial Fréchet gap.
pub fn build_partial_reduction(inst: &OvInstance) -> Result<GadgetCurvePair> {
    inst.require_nontrivial()?;
    let (pv, pm) = raw_partial_p(inst).normalize()?;
    let (qv, qm) = raw_partial_q(inst).normalize()?;
    let p = Curve::from_ints(&pv)?;
    let q = Curve::from_ints(&qv)?;
    check_partial_marks(&p, &q, &pm, &qm)?;
    Ok(GadgetCurvePair { construction: Construction::Partial, p, q, bookmarks: merge_marks(pm, qm) })
}

fn raw_p_start(d: usize, m: usize) -> Tagged {
    let mut skip1 = vec![6, 4, 6];
    skip1.extend(p_plus(d));
    skip1.extend([6, 4, 6]);
    let mut skip2 = Vec::new();
    for piece in [
        p_plus(d),
        p_plus(d),
        p_plus(d),
        vec![2],
        p_plus(d),
        p_star(d),
        p_plus(d),
        vec![2],
        p_plus(d),
    ] {
        skip2.extend(piece);
    }
    let mut t = Tagged::default();
    t.push(&[6]);
    for _ in 0..m - 1 {
        t.push(&skip1);
    }
    for _ in 0..m {
        t.push(&skip2);
    }
    t
}

fn raw_q_start(d: usize, m: usize) -> Tagged {
    let mut skip2 = Vec::new();
    for piece in [Q_PLUS.to_vec(), Q_PLUS.to_vec(), vec![7, 3, 7], q_star(d), vec![7, 3, 7]] {
        skip2.extend(piece);
    }
    let mut skip3 = Vec::new();
    for _ in 0..d {
        skip3.extend([11, 3]);
    }
    skip3.push(1);
    let mut t = Tagged::default();
    for _ in 0..m - 1 {
        t.push(&Q_PLUS);
    }
    for _ in 0..m {
        t.push(&skip2);
    }
    t.push(&skip3);
    t
}

/// Curves for the Fréchet gap: the partial construction framed by start pieces.
pub fn build_full_reduction(inst: &OvInstance) -> Result<GadgetCurvePair> {
    inst.require_nontrivial()?;
    let (d, m) = (inst.d(), inst.m());
    let start = raw_p_start(d, m);
    let mut p = Tagged::default();
    p.append(start.clone());
    p.append(raw_partial_p(inst));
    p.append(start.reversed());
    let qstart = raw_q_start(d, m);
    let mut q = Tagged::default();
    q.append(qstart.clone());
    q.append(raw_partial_q(inst));
    q.append(qstart.reversed());
    let (pv, pm) = p.normalize()?;
    let (qv, qm) = q.normalize()?;
    let p = Curve::from_ints(&pv)?;
    let q = Curve::from_ints(&qv)?;
    check_partial_marks(&p, &q, &pm, &qm)?;
    Ok(GadgetCurvePair { construction: Construction::Frechet, p, q, bookmarks: merge_marks(pm, qm) })
}

/// Refines both curves so their discrete distance equals the continuous one:
/// every edge gains the points at a critical distance from some vertex.
pub fn subdivide_for_discrete(p: &Curve, q: &Curve) -> Result<(Curve, Curve)> {
    let (p2, _) = subdivide_with_map(p, q, p)?;
    let (q2, _) = subdivide_with_map(p, q, q)?;
    Ok((p2, q2))
}

/// Subdivides `target` (one of `p`, `q`) and returns the new index of every old vertex.
fn subdivide_with_map(p: &Curve, q: &Curve, target: &Curve) -> Result<(Curve, Vec<usize>)> {
    for c in [p, q] {
        if c.dim() != crate::curve::Dim::One {
            return Err(Error::WrongDimension { expected: 1, found: c.dim().get() });
        }
    }
    let crit: Vec<Rational> = critical_values(p, q)?
        .into_iter()
        .map(|v| v.to_rational().expect("1D critical values are rational"))
        .collect();
    let coords: BTreeSet<Rational> = p.coords().iter().chain(q.coords()).copied().collect();
    let mut xs: BTreeSet<Rational> = BTreeSet::new();
    for &c in &coords {
        for &e in &crit {
            xs.insert(c + e);
            xs.insert(c - e);
        }
    }
    let v = target.coords();
    let mut out = vec![v[0]];
    let mut map = vec![1];
    for w in v.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a < b {
            out.extend(xs.range(a..b).filter(|&&x| x > a).copied());
        } else if b < a {
            out.extend(xs.range(b..a).filter(|&&x| x > b).rev().copied());
        }
        out.push(b);
        map.push(out.len());
    }
    Ok((Curve::new_1d(out)?, map))
}

/// The Fréchet construction refined for the discrete distance.
pub fn build_discrete_reduction(inst: &OvInstance) -> Result<GadgetCurvePair> {
    let full = build_full_reduction(inst)?;
    let (p, pmap) = subdivide_with_map(&full.p, &full.q, &full.p)?;
    let (q, qmap) = subdivide_with_map(&full.p, &full.q, &full.q)?;
    let p_names: BTreeSet<&str> = ["a_", "b_", "s_", "t_"].into();
    let bookmarks = full
        .bookmarks
        .iter()
        .map(|(name, &k)| {
            let on_p = p_names.iter().any(|pre| name.starts_with(pre));
            (name.clone(), if on_p { pmap[k - 1] } else { qmap[k - 1] })
        })
        .collect();
    Ok(GadgetCurvePair { construction: Construction::Discrete, p, q, bookmarks })
}

/// `∘_{i=1..d} ⟨6i + 2 − 2u_i⟩`.
fn weak_p_vector(u: &[bool]) -> Vec<i64> {
    u.iter().enumerate().map(|(k, &b)| 6 * (k as i64 + 1) + 2 - 2 * b as i64).collect()
}

/// `∘_{i=1..d} ⟨6i + 1 + 2v_i⟩`.
fn weak_q_vector(v: &[bool]) -> Vec<i64> {
    v.iter().enumerate().map(|(k, &b)| 6 * (k as i64 + 1) + 1 + 2 * b as i64).collect()
}

/// Discrete 1D curves for the discrete weak Fréchet gap.
pub fn build_weak_discrete_1d(inst: &OvInstance) -> Result<GadgetCurvePair> {
    inst.require_nontrivial()?;
    let d = inst.d();
    let top = 6 * d as i64;
    let p1_rev: Vec<i64> = weak_p_vector(&bits_or_all(d, true)).into_iter().rev().collect();
    let mut skip = vec![3];
    skip.extend(weak_p_vector(&bits_or_all(d, false)));
    skip.push(top + 9);

    let mut p = Tagged::default();
    p.push(&[0]).push(&skip).push(&p1_rev);
    for (i, u) in inst.u().iter().enumerate() {
        let s = p.len();
        p.push(&weak_p_vector(u));
        p.tag(s, format!("s_{i}"));
        p.tag_last(format!("t_{i}"));
        p.push(&p1_rev);
    }
    p.push(&skip).push(&[top + 12]);

    let q1 = weak_q_vector(&bits_or_all(d, true));
    let q0_rev: Vec<i64> = weak_q_vector(&bits_or_all(d, false)).into_iter().rev().collect();
    let mut q = Tagged::default();
    q.push(&[0, 3]).push(&q1);
    for (j, v) in inst.v().iter().enumerate() {
        q.push(&[top + 9]).push(&q0_rev);
        let s = q.len();
        q.push(&weak_q_vector(v));
        q.tag(s, format!("s'_{j}"));
        q.tag_last(format!("t'_{j}"));
        q.push(&q0_rev).push(&[3]).push(&q1);
    }
    q.push(&[top + 9, top + 12]);
    finish_verbatim(Construction::Weak1d, p, q)
}

fn finish_verbatim(construction: Construction, p: Tagged, q: Tagged) -> Result<GadgetCurvePair> {
    let mut bookmarks = BTreeMap::new();
    for t in [&p, &q] {
        for (k, names) in t.tags.iter().enumerate() {
            for name in names {
                bookmarks.insert(name.clone(), k + 1);
            }
        }
    }
    Ok(GadgetCurvePair { construction, p: Curve::from_ints(&p.vals)?, q: Curve::from_ints(&q.vals)?, bookmarks })
}

type Pt = (i64, i64);

fn weak_p_vector_2d(u: &[bool]) -> Vec<Pt> {
    let mut out = Vec::with_capacity(4 * u.len());
    for (k, &b) in u.iter().enumerate() {
        let x = 6 * (k as i64 + 1);
        let y = 2 * b as i64;
        out.extend([(x, 1), (x, y), (x + 6, y), (x + 6, 1)]);
    }
    out
}

fn weak_q_vector_2d(v: &[bool]) -> Vec<Pt> {
    let mut out = Vec::with_capacity(4 * v.len());
    for (k, &b) in v.iter().enumerate() {
        let x = 6 * (k as i64 + 1);
        let y = 1 - 2 * b as i64;
        out.extend([(x, 0), (x, y), (x + 6, y), (x + 6, 0)]);
    }
    out
}

/// Continuous 2D curves for the weak Fréchet gap.
pub fn build_weak_continuous_2d(inst: &OvInstance) -> Result<GadgetCurvePair> {
    inst.require_nontrivial()?;
    let d = inst.d();
    let top = 6 * d as i64;
    let p1_rev: Vec<Pt> = weak_p_vector_2d(&bits_or_all(d, true)).into_iter().rev().collect();
    let mut skip = vec![(3, 1)];
    skip.extend(weak_p_vector_2d(&bits_or_all(d, false)));
    skip.push((top + 9, 1));

    let mut p: Vec<Pt> = vec![(0, 1)];
    let mut marks = BTreeMap::new();
    p.extend(&skip);
    p.extend(&p1_rev);
    for (i, u) in inst.u().iter().enumerate() {
        marks.insert(format!("s_{i}"), p.len() + 1);
        p.extend(weak_p_vector_2d(u));
        marks.insert(format!("t_{i}"), p.len());
        p.extend(&p1_rev);
    }
    p.extend(&skip);
    p.push((top + 12, 1));

    let q1 = weak_q_vector_2d(&bits_or_all(d, true));
    let q0_rev: Vec<Pt> = weak_q_vector_2d(&bits_or_all(d, false)).into_iter().rev().collect();
    let mut q: Vec<Pt> = vec![(0, 0), (3, 0)];
    q.extend(&q1);
    for (j, v) in inst.v().iter().enumerate() {
        q.push((top + 9, 0));
        q.extend(&q0_rev);
        marks.insert(format!("s'_{j}"), q.len() + 1);
        q.extend(weak_q_vector_2d(v));
        marks.insert(format!("t'_{j}"), q.len());
        q.extend(&q0_rev);
        q.push((3, 0));
        q.extend(&q1);
    }
    q.extend([(top + 9, 0), (top + 12, 0)]);
    Ok(GadgetCurvePair {
        construction: Construction::Weak2d,
        p: Curve::from_int_points(&p)?,
        q: Curve::from_int_points(&q)?,
        bookmarks: marks,
    })
}
