//! Gap verification: every reduction maps YES instances to distance ≤ 1 and
//! NO instances to distance ≥ 3.

use rayon::prelude::*;
use serde::Serialize;

use super::gadgets::Construction;
use super::instance::{OvInstance, TrivialityClass, DEFAULT_CONSTANT_D_THRESHOLD};
use crate::engines::{decide, exact, Variant};
use crate::error::Result;
use crate::numeric::{frac, rat, Dist};

/// Distance bound for YES instances.
pub const YES_BOUND: i64 = 1;
/// Distance bound for NO instances.
pub const NO_BOUND: i64 = 3;

/// One row: an instance, one variant, what the oracle and the engines said.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapReport {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub seed: Option<u64>,
    pub construction: Construction,
    pub variant: Variant,
    pub class: TrivialityClass,
    /// Lexicographically first orthogonal pair, 0-based.
    pub pair: Option<(usize, usize)>,
    /// `(j − i) mod m` for the oracle's pair.
    pub h_star: Option<usize>,
    /// Answer for a trivial instance, resolved without curves.
    pub resolved: Option<bool>,
    pub sizes: Option<(usize, usize)>,
    pub distance: Option<Dist>,
    /// The decision at 1 for YES instances, at 5/2 for NO instances.
    pub decision: Option<bool>,
    pub error: Option<String>,
}

impl GapReport {
    pub fn oracle_yes(&self) -> bool {
        self.pair.is_some()
    }

    pub fn pass(&self) -> bool {
        if self.error.is_some() {
            return false;
        }
        if let Some(r) = self.resolved {
            return r == self.oracle_yes();
        }
        let (Some(dist), Some(decision)) = (self.distance, self.decision) else {
            return false;
        };
        if self.oracle_yes() {
            dist <= Dist::from_int(YES_BOUND) && decision
        } else {
            dist >= Dist::from_int(NO_BOUND) && !decision
        }
    }

    pub fn csv_header() -> &'static str {
        "n,m,d,seed,construction,variant,class,oracle,pair,h_star,size_p,size_q,distance,decision,pass,error"
    }

    pub fn csv_row(&self) -> String {
        let opt = |x: Option<String>| x.unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{:?},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.m,
            self.d,
            opt(self.seed.map(|s| s.to_string())),
            self.construction,
            self.variant,
            self.class,
            if self.oracle_yes() { "YES" } else { "NO" },
            opt(self.pair.map(|(i, j)| format!("{i}:{j}"))),
            opt(self.h_star.map(|h| h.to_string())),
            opt(self.sizes.map(|s| s.0.to_string())),
            opt(self.sizes.map(|s| s.1.to_string())),
            opt(self.distance.map(|d| d.to_string())),
            opt(self.decision.map(|b| b.to_string())),
            self.pass(),
            opt(self.error.as_ref().map(|e| e.replace(',', ";"))),
        )
    }

    fn sort_key(&self) -> (usize, usize, usize, Option<u64>, Construction, Variant) {
        (self.n, self.m, self.d, self.seed, self.construction, self.variant)
    }
}

/// Checks the gap for each variant of `construction` on one instance.
pub fn verify_instance(inst: &OvInstance, construction: Construction, seed: Option<u64>) -> Vec<GapReport> {
    let class = inst.classify(DEFAULT_CONSTANT_D_THRESHOLD);
    let pair = inst.brute_force();
    let h_star = pair.map(|(i, j)| (j + inst.m() - i % inst.m()) % inst.m());
    let blank = |variant| GapReport {
        n: inst.n(),
        m: inst.m(),
        d: inst.d(),
        seed,
        construction,
        variant,
        class,
        pair,
        h_star,
        resolved: None,
        sizes: None,
        distance: None,
        decision: None,
        error: None,
    };
    let variants = construction.variants();
    if let Some(answer) = inst.resolve_trivial(class) {
        return variants.iter().map(|&v| GapReport { resolved: Some(answer), ..blank(v) }).collect();
    }
    let pair_curves = match construction.build(inst) {
        Ok(g) => g,
        Err(e) => return variants.iter().map(|&v| GapReport { error: Some(e.to_string()), ..blank(v) }).collect(),
    };
    let (p, q) = (&pair_curves.p, &pair_curves.q);
    variants
        .iter()
        .map(|&v| {
            let mut row = GapReport { sizes: Some((p.len(), q.len())), ..blank(v) };
            let eps = if pair.is_some() { rat(YES_BOUND) } else { frac(2 * NO_BOUND - 1, 2) };
            let run = || -> Result<(Dist, bool)> { Ok((exact(v, p, q)?, decide(v, p, q, eps)?)) };
            match run() {
                Ok((dist, decision)) => {
                    row.distance = Some(dist);
                    row.decision = Some(decision);
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            row
        })
        .collect()
}

/// One randomly generated instance of a campaign.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CampaignCase {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub seed: u64,
    pub density: f64,
}

impl CampaignCase {
    pub fn instance(&self) -> Result<OvInstance> {
        OvInstance::random(self.n, self.m, self.d, self.density, true, self.seed)
    }
}

/// Bit densities cycled through by seed, so both YES and NO instances occur.
pub const DENSITIES: [f64; 3] = [0.5, 0.75, 0.9];

/// Constructions of the default campaign.
pub const DEFAULT_CONSTRUCTIONS: [Construction; 4] =
    [Construction::Partial, Construction::Frechet, Construction::Weak1d, Construction::Weak2d];

/// The grid `n, m ∈ 1..=6`, `d ∈ 2..=5`, `seeds` seeds per cell.
pub fn default_cases(seeds: u64) -> Vec<CampaignCase> {
    let mut cases = Vec::new();
    for n in 1..=6 {
        for m in 1..=6 {
            for d in 2..=5 {
                for k in 0..seeds {
                    let seed = (((n as u64 * 8 + m as u64) * 8 + d as u64) << 32) | k;
                    cases.push(CampaignCase { n, m, d, seed, density: DENSITIES[k as usize % DENSITIES.len()] });
                }
            }
        }
    }
    cases
}

/// `count` cases with `n, m ∈ 1..=max_nm` and `d ∈ 2..=max_d`, all derived from `base_seed`.
pub fn random_cases(count: usize, max_nm: usize, max_d: usize, base_seed: u64) -> Vec<CampaignCase> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(base_seed);
    (0..count)
        .map(|k| CampaignCase {
            n: rng.random_range(1..=max_nm),
            m: rng.random_range(1..=max_nm),
            d: rng.random_range(2..=max_d.max(2)),
            seed: rng.random(),
            density: DENSITIES[k % DENSITIES.len()],
        })
        .collect()
}

/// Runs every case against every construction in parallel; rows come back sorted.
pub fn run_campaign(cases: &[CampaignCase], constructions: &[Construction]) -> Vec<GapReport> {
    let jobs: Vec<(CampaignCase, Construction)> =
        cases.iter().flat_map(|&c| constructions.iter().map(move |&k| (c, k))).collect();
    let mut rows: Vec<GapReport> = jobs
        .par_iter()
        .flat_map_iter(|&(case, construction)| match case.instance() {
            Ok(inst) => verify_instance(&inst, construction, Some(case.seed)),
            Err(e) => construction
                .variants()
                .iter()
                .map(|&variant| GapReport {
                    n: case.n,
                    m: case.m,
                    d: case.d,
                    seed: Some(case.seed),
                    construction,
                    variant,
                    class: TrivialityClass::Nontrivial,
                    pair: None,
                    h_star: None,
                    resolved: None,
                    sizes: None,
                    distance: None,
                    decision: None,
                    error: Some(e.to_string()),
                })
                .collect(),
        })
        .collect();
    rows.sort_by_key(|r| r.sort_key());
    rows
}
