//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

mod common;

use std::time::{Duration, Instant};

use frechet_core::ov::gap::{random_cases, run_campaign, CampaignCase, GapReport};
use frechet_core::ov::{build_full_reduction, build_star_gadget, build_vector_gadget, subdivide_for_discrete, Side};
use frechet_core::weak1d::{canonicalize, greedy_matching, is_canonical, weak_frechet_1d_linear};
use frechet_core::{
    critical_values, decide_at, discrete_frechet_exact, exact, frechet_exact, rat, Construction, Curve, Dist,
    Rational, Variant,
};
use rand::Rng;
use rayon::prelude::*;

const CAMPAIGN_SIZE: usize = 500;
const CAMPAIGN_SEED: u64 = 0x0f_2024;

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(id: &str, title: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    println!(
        "{} {id} {title} | {} | {:.1}s",
        if out.pass { "PASS" } else { "FAIL" },
        out.detail,
        start.elapsed().as_secs_f64()
    );
    out.pass
}

fn gap_outcome(rows: &[GapReport], elapsed: Duration, limit: Duration) -> Outcome {
    let failed: Vec<&GapReport> = rows.iter().filter(|r| !r.pass()).collect();
    let yes = rows.iter().filter(|r| r.oracle_yes()).count();
    let nontrivial = rows.iter().filter(|r| r.resolved.is_none()).count();
    for r in failed.iter().take(5) {
        println!("    failing row: {}", r.csv_row());
    }
    Outcome {
        pass: failed.is_empty() && nontrivial == rows.len() && elapsed <= limit,
        detail: format!(
            "{} rows ({} YES, {} NO), {} failed; rule YES<=1, NO>=3 and decide(5/2)=false; tol exact; {:.1}s of {}s allowed",
            rows.len(),
            yes,
            rows.len() - yes,
            failed.len(),
            elapsed.as_secs_f64(),
            limit.as_secs()
        ),
    }
}

fn timed_campaign(cases: &[CampaignCase], constructions: &[Construction]) -> (Vec<GapReport>, Duration) {
    let start = Instant::now();
    let rows = run_campaign(cases, constructions);
    (rows, start.elapsed())
}

fn curve(v: &[i64]) -> Curve {
    Curve::from_ints(v).unwrap()
}

fn to_rational(x: common::Q) -> Rational {
    Rational::new(*x.numer() as i64, *x.denom() as i64)
}

fn criterion_3(cases: &[CampaignCase], frechet_rows: &[GapReport]) -> Outcome {
    let pair_failures: usize = cases
        .par_iter()
        .map(|case| {
            let inst = case.instance().unwrap();
            let g = build_full_reduction(&inst).unwrap();
            let f = frechet_rows
                .iter()
                .find(|r| r.seed == Some(case.seed) && (r.n, r.m, r.d) == (case.n, case.m, case.d))
                .and_then(|r| r.distance)
                .unwrap_or_else(|| frechet_exact(&g.p, &g.q).unwrap());
            let cv = critical_values(&g.p, &g.q).unwrap();
            let integral = cv
                .iter()
                .all(|v| v.to_rational().is_some_and(|r| r.is_integer() && rat(0) <= r && r <= rat(11)));
            let (ps, qs) = subdivide_for_discrete(&g.p, &g.q).unwrap();
            let df = discrete_frechet_exact(&ps, &qs).unwrap();
            usize::from(df != f || !integral)
        })
        .sum();
    let mut r = common::rng(303);
    let mut random_failures = 0;
    for _ in 0..50 {
        let a = common::random_curve(&mut r, 8, 0, 11);
        let b = common::random_curve(&mut r, 8, 0, 11);
        let (p, q) = (curve(&a), curve(&b));
        let (ps, qs) = subdivide_for_discrete(&p, &q).unwrap();
        let f = to_rational(common::frechet(&a, &b));
        if discrete_frechet_exact(&ps, &qs).unwrap() != Dist::from_rational(f) {
            println!("    mismatch on random pair {a:?} {b:?}");
            random_failures += 1;
        }
    }
    Outcome {
        pass: pair_failures == 0 && random_failures == 0,
        detail: format!(
            "{} reduction pairs ({} failed: dF(subdivided) != F or a critical value outside integers 0..=11), 50 random curves in 0..=11 ({} failed); tol exact",
            cases.len(),
            pair_failures,
            random_failures
        ),
    }
}

fn criterion_5() -> Outcome {
    let mut r = common::rng(505);
    let pairs: Vec<(Vec<i64>, Vec<i64>)> =
        (0..1000).map(|_| (common::random_curve(&mut r, 50, -20, 20), common::random_curve(&mut r, 50, -20, 20))).collect();
    let failures: Vec<&(Vec<i64>, Vec<i64>)> = pairs
        .par_iter()
        .filter(|(a, b)| {
            let (p, q) = (curve(a), curve(b));
            let lin = Dist::from_rational(weak_frechet_1d_linear(&p, &q).unwrap());
            let quad = exact(Variant::WF, &p, &q).unwrap();
            let oracle = Dist::from_rational(to_rational(common::weak(a, b, false)));
            lin != quad || lin != oracle
        })
        .collect();
    for (a, b) in failures.iter().take(3) {
        println!("    mismatch {a:?} {b:?}");
    }
    let hand = [
        (greedy_matching(&curve(&[0, 10]), &curve(&[1, 9])).unwrap(), rat(1)),
        (greedy_matching(&curve(&[5, 0, 10]), &curve(&[5, 10])).unwrap(), rat(5)),
        (greedy_matching(&curve(&[3, 1, 4, 0, 10]), &curve(&[3, 1, 4, 0, 10])).unwrap(), rat(0)),
    ];
    let hand_ok = hand.iter().all(|(got, want)| got == want);
    Outcome {
        pass: failures.is_empty() && hand_ok,
        detail: format!(
            "1000 random pairs (<=50 vertices, coords -20..=20): {} disagreements with the quadratic engine or the oracle; greedy hand traces 1, 5, 0: {}; tol exact",
            failures.len(),
            if hand_ok { "match" } else { "MISMATCH" }
        ),
    }
}

fn criterion_6() -> Outcome {
    let mut r = common::rng(606);
    let mut bad = 0;
    for _ in 0..500 {
        let a = common::random_curve(&mut r, 40, -20, 20);
        let c = canonicalize(&curve(&a)).unwrap();
        let v: Vec<i64> = c.curve().coords().iter().map(|x| x.to_integer()).collect();
        let ends = v[0] == a[0] && v.last() == a.last();
        let zero = common::weak(&a, &v, false) == common::Q::from_integer(0);
        if !(is_canonical(&v) && ends && zero) {
            println!("    bad canonical form {a:?} -> {v:?}");
            bad += 1;
        }
    }
    Outcome {
        pass: bad == 0,
        detail: format!("500 random curves: {bad} violate the 4-window predicate, endpoints or d_wF = 0; tol exact"),
    }
}

fn criterion_7() -> Outcome {
    let sizes = [100_000usize, 1_000_000, 10_000_000];
    let mut medians = Vec::new();
    for &n in &sizes {
        let mut r = common::rng(707 + n as u64);
        let a: Vec<i64> = (0..n).map(|_| r.random_range(-1_000_000..=1_000_000)).collect();
        let b: Vec<i64> = (0..n).map(|_| r.random_range(-1_000_000..=1_000_000)).collect();
        let (p, q) = (curve(&a), curve(&b));
        drop((a, b));
        let mut times: Vec<Duration> = (0..3)
            .map(|_| {
                let t = Instant::now();
                std::hint::black_box(weak_frechet_1d_linear(&p, &q).unwrap());
                t.elapsed()
            })
            .collect();
        times.sort();
        medians.push(times[1]);
    }
    let ratios: Vec<f64> = medians.windows(2).map(|w| w[1].as_secs_f64() / w[0].as_secs_f64()).collect();
    Outcome {
        pass: ratios.iter().all(|&x| x <= 12.5),
        detail: format!(
            "median of 3 at 1e5/1e6/1e7 vertices: {:.1}ms / {:.1}ms / {:.1}ms, ratios {:.2}x and {:.2}x (limit 12.5x)",
            medians[0].as_secs_f64() * 1e3,
            medians[1].as_secs_f64() * 1e3,
            medians[2].as_secs_f64() * 1e3,
            ratios[0],
            ratios[1]
        ),
    }
}

fn criterion_8() -> Outcome {
    let mut r = common::rng(808);
    let mut problems: Vec<String> = Vec::new();
    let mut brute_checked = 0;
    for k in 0..200 {
        let (p, q, ints) = if k % 4 == 3 {
            let pts = |r: &mut rand_chacha::ChaCha8Rng| {
                let len = r.random_range(1..=5);
                let v: Vec<(i64, i64)> = (0..len).map(|_| (r.random_range(-4..=4), r.random_range(-4..=4))).collect();
                Curve::from_int_points(&v).unwrap()
            };
            (pts(&mut r), pts(&mut r), None)
        } else {
            let a = common::random_curve(&mut r, 8, -10, 10);
            let b = common::random_curve(&mut r, 8, -10, 10);
            (curve(&a), curve(&b), Some((a, b)))
        };
        let e = |v| exact(v, &p, &q).unwrap();
        let (wf, f, df, pf) = (e(Variant::WF), e(Variant::F), e(Variant::DF), e(Variant::PartialF));
        if !(wf <= f && f <= df && pf <= f) {
            problems.push(format!("order wF={wf} F={f} dF={df} partialF={pf}"));
        }
        if f != exact(Variant::F, &q, &p).unwrap() {
            problems.push("F not symmetric".into());
        }
        let mut grid = critical_values(&p, &q).unwrap();
        let extra: Vec<Dist> = grid.windows(2).filter_map(|w| {
            let (a, b) = (w[0].to_rational()?, w[1].to_rational()?);
            Some(Dist::from_rational((a + b) / 2))
        }).collect();
        grid.extend(extra);
        grid.sort();
        for v in Variant::ALL {
            let answers: Vec<bool> = grid.iter().map(|&eps| decide_at(v, &p, &q, eps).unwrap()).collect();
            if answers.windows(2).any(|w| w[0] && !w[1]) {
                problems.push(format!("{v} decision not monotone"));
            }
            let value = exact(v, &p, &q).unwrap();
            let first = grid.iter().zip(&answers).find(|(_, &ok)| ok).map(|(&eps, _)| eps);
            if first != Some(value) {
                problems.push(format!("{v} exact {value} but first accepted {first:?}"));
            }
        }
        if let Some((a, b)) = ints {
            if a.len() <= 6 && b.len() <= 6 {
                brute_checked += 1;
                if df != Dist::from_int(common::discrete_brute(&a, &b)) {
                    problems.push(format!("dF brute force mismatch {a:?} {b:?}"));
                }
            }
        }
    }
    for p in problems.iter().take(5) {
        println!("    {p}");
    }
    Outcome {
        pass: problems.is_empty(),
        detail: format!(
            "200 pairs (150 1D, 50 2D): wF<=F<=dF, partialF<=F, F symmetric, decisions monotone over all critical values and midpoints; dF vs coupling brute force on {brute_checked} small pairs; {} problems; tol exact",
            problems.len()
        ),
    }
}

fn criterion_9() -> Outcome {
    let golden = |name: &str| {
        std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
    };
    let bits = |s: &str| s.chars().map(|c| c == '1').collect::<Vec<_>>();
    let checks = [
        (build_vector_gadget(&bits("0101"), Side::P).unwrap(), "p_vector_0101.json"),
        (build_vector_gadget(&bits("0011"), Side::Q).unwrap(), "q_vector_0011.json"),
        (build_star_gadget(4, Side::P).unwrap(), "p_star_d4.json"),
    ];
    let matched = checks.iter().filter(|(c, file)| c.to_json() + "\n" == golden(file)).count();
    Outcome { pass: matched == 3, detail: format!("{matched}/3 displayed gadgets byte-identical to golden files") }
}

fn main() {
    let cases = random_cases(CAMPAIGN_SIZE, 6, 5, CAMPAIGN_SEED);
    let mut all = Vec::new();

    let mut partial_rows = Vec::new();
    all.push(run("C1", "partial Fréchet gap", || {
        let (rows, t) = timed_campaign(&cases, &[Construction::Partial]);
        partial_rows = rows;
        gap_outcome(&partial_rows, t, Duration::from_secs(120))
    }));
    let mut frechet_rows = Vec::new();
    all.push(run("C2", "Fréchet gap", || {
        let (rows, t) = timed_campaign(&cases, &[Construction::Frechet]);
        frechet_rows = rows;
        gap_outcome(&frechet_rows, t, Duration::from_secs(300))
    }));
    all.push(run("C3", "discrete conversion", || criterion_3(&cases, &frechet_rows)));
    all.push(run("C4", "weak Fréchet gaps", || {
        let (rows, t) = timed_campaign(&cases, &[Construction::Weak1d, Construction::Weak2d]);
        gap_outcome(&rows, t, Duration::from_secs(300))
    }));
    all.push(run("C5", "linear weak 1D correctness", criterion_5));
    all.push(run("C6", "canonicalization", criterion_6));
    all.push(run("C7", "empirical linearity", criterion_7));
    all.push(run("C8", "engine coherence", criterion_8));
    all.push(run("C9", "gadget golden files", criterion_9));

    let passed = all.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", all.len());
    if passed != all.len() {
        std::process::exit(1);
    }
}
