use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Default bound at or below which the dimension counts as constant.
pub const DEFAULT_CONSTANT_D_THRESHOLD: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TrivialityClass {
    Nontrivial,
    EmptySide,
    ConstantDimension,
    ContainsZeroVector,
}

/// Two sets of boolean vectors of a common dimension `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OvInstance {
    d: usize,
    u: Vec<Vec<bool>>,
    v: Vec<Vec<bool>>,
}

impl OvInstance {
    pub fn new(d: usize, u: Vec<Vec<bool>>, v: Vec<Vec<bool>>) -> Result<OvInstance> {
        if d == 0 {
            return domain("vector dimension must be at least 1");
        }
        if let Some(bad) = u.iter().chain(&v).find(|x| x.len() != d) {
            return domain(format!("vector of length {} in a {d}-dimensional instance", bad.len()));
        }
        Ok(OvInstance { d, u, v })
    }

    /// Builds an instance from bitstrings such as `"0110"`.
    pub fn from_bits(u: &[&str], v: &[&str]) -> Result<OvInstance> {
        let d = u.iter().chain(v).map(|s| s.len()).next().unwrap_or(1);
        let parse = |s: &&str| parse_bits(s);
        OvInstance::new(d, u.iter().map(parse).collect::<Result<_>>()?, v.iter().map(parse).collect::<Result<_>>()?)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn u(&self) -> &[Vec<bool>] {
        &self.u
    }

    pub fn v(&self) -> &[Vec<bool>] {
        &self.v
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn m(&self) -> usize {
        self.v.len()
    }

    /// Priority: empty side, zero vector, constant dimension.
    pub fn classify(&self, constant_d_threshold: usize) -> TrivialityClass {
        if self.u.is_empty() || self.v.is_empty() {
            TrivialityClass::EmptySide
        } else if self.u.iter().chain(&self.v).any(|x| x.iter().all(|&b| !b)) {
            TrivialityClass::ContainsZeroVector
        } else if self.d <= constant_d_threshold {
            TrivialityClass::ConstantDimension
        } else {
            TrivialityClass::Nontrivial
        }
    }

    /// Errors unless the instance is nontrivial under the default threshold.
    pub fn require_nontrivial(&self) -> Result<()> {
        match self.classify(DEFAULT_CONSTANT_D_THRESHOLD) {
            TrivialityClass::Nontrivial => Ok(()),
            other => Err(Error::NotNontrivial(other)),
        }
    }

    /// Lexicographically first orthogonal pair `(i, j)`, 0-based.
    pub fn brute_force(&self) -> Option<(usize, usize)> {
        for (i, a) in self.u.iter().enumerate() {
            for (j, b) in self.v.iter().enumerate() {
                if a.iter().zip(b).all(|(&x, &y)| !(x && y)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// The answer for a trivial instance without running a reduction:
    /// empty sides have no pair, a zero vector is orthogonal to everything,
    /// and constant dimension is solved directly.
    pub fn resolve_trivial(&self, class: TrivialityClass) -> Option<bool> {
        match class {
            TrivialityClass::Nontrivial => None,
            TrivialityClass::EmptySide => Some(false),
            TrivialityClass::ContainsZeroVector => Some(true),
            TrivialityClass::ConstantDimension => Some(self.brute_force().is_some()),
        }
    }

    /// Random instance; each bit is 1 with probability `density`. With
    /// `nontrivial`, zero vectors are resampled.
    pub fn random(n: usize, m: usize, d: usize, density: f64, nontrivial: bool, seed: u64) -> Result<OvInstance> {
        if d == 0 {
            return domain("vector dimension must be at least 1");
        }
        if !(0.0..=1.0).contains(&density) {
            return domain(format!("density must lie in [0, 1], got {density}"));
        }
        if nontrivial {
            if density == 0.0 {
                return domain("cannot avoid zero vectors at density 0");
            }
            if n == 0 || m == 0 {
                return domain("a nontrivial instance needs both sides non-empty");
            }
            if d <= DEFAULT_CONSTANT_D_THRESHOLD {
                return domain(format!("a nontrivial instance needs d > {DEFAULT_CONSTANT_D_THRESHOLD}"));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw = |rng: &mut ChaCha8Rng| loop {
            let x: Vec<bool> = (0..d).map(|_| rng.random_bool(density)).collect();
            if !nontrivial || x.iter().any(|&b| b) {
                return x;
            }
        };
        let u = (0..n).map(|_| draw(&mut rng)).collect();
        let v = (0..m).map(|_| draw(&mut rng)).collect();
        OvInstance::new(d, u, v)
    }

    /// Text format: `d`, a `U` line, bitstrings, a `V` line, bitstrings.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.d).unwrap();
        out.push_str("U\n");
        for x in &self.u {
            out.push_str(&bits_to_string(x));
            out.push('\n');
        }
        out.push_str("V\n");
        for x in &self.v {
            out.push_str(&bits_to_string(x));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<OvInstance> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let d: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty instance file".into()))?
            .parse()
            .map_err(|_| Error::Parse("first line must be the dimension".into()))?;
        if lines.next() != Some("U") {
            return Err(Error::Parse("expected a `U` line".into()));
        }
        let mut u = Vec::new();
        let mut v = Vec::new();
        let mut in_v = false;
        for line in lines {
            if line == "V" && !in_v {
                in_v = true;
                continue;
            }
            let bits = parse_bits(line)?;
            if in_v {
                v.push(bits);
            } else {
                u.push(bits);
            }
        }
        if !in_v {
            return Err(Error::Parse("expected a `V` line".into()));
        }
        OvInstance::new(d, u, v).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Short description like `n=3 m=2 d=4`.
    pub fn summary(&self) -> String {
        format!("n={} m={} d={}", self.n(), self.m(), self.d)
    }
}

fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Parse(format!("bad bit {c:?} in {s:?}"))),
        })
        .collect()
}

pub fn bits_to_string(x: &[bool]) -> String {
    x.iter().map(|&b| if b { '1' } else { '0' }).collect()
}
