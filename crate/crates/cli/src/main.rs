use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use frechet_core::ov::{default_cases, random_cases, run_campaign, verify_instance, DEFAULT_CONSTRUCTIONS};
use frechet_core::{
    exact, extract_matching_at, parse_rational, weak_frechet_1d_linear, Construction, Curve, Dist, FsdRender,
    GadgetCurvePair, GapReport, Matching, OvInstance, Variant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "frechet", version, about = "Fréchet distance engines and OV reductions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random OV instance.
    GenOv {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Probability of each bit being 1.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Resample zero vectors.
        #[arg(long)]
        nontrivial: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an OV instance by brute force; indices are 1-based.
    SolveOv { instance: PathBuf },
    /// Build the curve pair of a reduction.
    Reduce {
        construction: Construction,
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact distance between two curve files, or of one pair file from `reduce`.
    Dist {
        #[arg(num_args = 1..=2, required = true)]
        curves: Vec<PathBuf>,
        /// F, dF, partialF, partial-dF, wF, wwF, dwF or dwwF.
        #[arg(long)]
        variant: Option<Variant>,
        #[arg(long, value_enum, default_value_t = Algo::Engine)]
        algo: Algo,
        /// Write a witness matching as JSON.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Check the 1-versus-3 gap of the reductions.
    VerifyGap {
        /// A single instance file; without it a seeded campaign runs.
        instance: Option<PathBuf>,
        /// Comma-separated constructions.
        #[arg(long, value_delimiter = ',')]
        construction: Vec<Construction>,
        /// Seeds per grid cell of the default campaign.
        #[arg(long, default_value_t = 25)]
        seeds: u64,
        /// Run this many random instances instead of the grid.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 6)]
        max_nm: usize,
        #[arg(long, default_value_t = 5)]
        max_d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output of every row.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print every row, not only failures.
        #[arg(long)]
        verbose: bool,
    },
    /// Draw the free space of two curves as SVG.
    RenderFsd {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        arclength: bool,
        /// Overlay a witness matching read from JSON.
        #[arg(long, conflicts_with = "variant")]
        witness: Option<PathBuf>,
        /// Overlay a witness of this variant at ε, if one exists.
        #[arg(long)]
        variant: Option<Variant>,
        /// Samples per cell side.
        #[arg(long, default_value_t = 16)]
        resolution: usize,
    },
    /// Time an algorithm on random curves; CSV `size,median_ns`.
    Bench {
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long, value_delimiter = ',', default_values_t = [1000usize, 2000, 4000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        runs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algo {
    /// The general engine for the chosen variant.
    Engine,
    /// Linear-time weak distance for 1D curves.
    Weak1dLinear,
    /// Weak distance through the full free space.
    WeakQuadratic,
}

enum Fail {
    /// Bad input or usage.
    Usage(String),
    /// A check ran and did not hold.
    Verification(String),
}

impl From<frechet_core::Error> for Fail {
    fn from(e: frechet_core::Error) -> Fail {
        Fail::Usage(e.to_string())
    }
}

type CliResult<T = ()> = Result<T, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Verification(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::GenOv { n, m, d, seed, density, nontrivial, out } => {
            let inst = OvInstance::random(n, m, d, density, nontrivial, seed)?;
            emit(out.as_deref(), &inst.to_text())
        }
        Command::SolveOv { instance } => {
            let inst = read_instance(&instance)?;
            match inst.brute_force() {
                Some((i, j)) => println!("YES {} {}", i + 1, j + 1),
                None => println!("NO"),
            }
            Ok(())
        }
        Command::Reduce { construction, instance, out } => {
            let pair = construction.build(&read_instance(&instance)?)?;
            emit(out.as_deref(), &(pair.to_json() + "\n"))
        }
        Command::Dist { curves, variant, algo, witness } => dist(&curves, variant, algo, witness.as_deref()),
        Command::VerifyGap { instance, construction, seeds, random, max_nm, max_d, seed, out, verbose } => {
            let constructions = if construction.is_empty() { DEFAULT_CONSTRUCTIONS.to_vec() } else { construction };
            let started = Instant::now();
            let rows = match (instance, random) {
                (Some(path), _) => {
                    let inst = read_instance(&path)?;
                    constructions.iter().flat_map(|&c| verify_instance(&inst, c, None)).collect()
                }
                (None, Some(count)) => run_campaign(&random_cases(count, max_nm, max_d, seed), &constructions),
                (None, None) => run_campaign(&default_cases(seeds), &constructions),
            };
            report_gap(&rows, verbose, started.elapsed().as_secs_f64(), out.as_deref())
        }
        Command::RenderFsd { a, b, eps, out, arclength, witness, variant, resolution } => {
            let (p, q) = (read_curve(&a)?, read_curve(&b)?);
            let eps = parse_rational(&eps)?;
            if eps < 0.into() {
                return Err(Fail::Usage("eps must be non-negative".into()));
            }
            let eps = Dist::from_rational(eps);
            let witness = match (witness, variant) {
                (Some(path), _) => Some(Matching::from_json(&read(&path)?)?),
                (None, Some(v)) => match extract_matching_at(&p, &q, eps, v) {
                    Ok(m) => Some(m),
                    Err(frechet_core::Error::NoWitness(_)) => {
                        eprintln!("no {v} matching of width {eps}; drawing without a witness");
                        None
                    }
                    Err(e) => return Err(e.into()),
                },
                (None, None) => None,
            };
            let render = FsdRender { resolution, eps, arclength, witness };
            emit(Some(&out), &render.render(&p, &q)?)
        }
        Command::Bench { algo, sizes, seed, runs, out } => bench(algo, &sizes, seed, runs, out.as_deref()),
    }
}

fn dist(curves: &[PathBuf], variant: Option<Variant>, algo: Algo, witness: Option<&Path>) -> CliResult {
    let (p, q) = match curves {
        [a, b] => (read_curve(a)?, read_curve(b)?),
        [pair] => {
            let g = GadgetCurvePair::from_json(&read(pair)?)?;
            (g.p, g.q)
        }
        _ => unreachable!("clap limits the count"),
    };
    let variant = match (algo, variant) {
        (Algo::Engine, v) => v.unwrap_or(Variant::F),
        (_, None | Some(Variant::WF)) => Variant::WF,
        (_, Some(v)) => return Err(Fail::Usage(format!("--algo {algo:?} computes wF, not {v}"))),
    };
    let value = match algo {
        Algo::Weak1dLinear => Dist::from_rational(weak_frechet_1d_linear(&p, &q)?),
        Algo::Engine | Algo::WeakQuadratic => exact(variant, &p, &q)?,
    };
    println!("{value}");
    if let Some(path) = witness {
        let m = extract_matching_at(&p, &q, value, variant)?;
        emit(Some(path), &(m.to_json() + "\n"))?;
    }
    Ok(())
}

fn report_gap(rows: &[GapReport], verbose: bool, secs: f64, csv: Option<&Path>) -> CliResult {
    let mut groups: BTreeMap<(String, String), Tally> = BTreeMap::new();
    for row in rows {
        if verbose || !row.pass() {
            println!("{}", describe(row));
        }
        groups.entry((row.construction.to_string(), row.variant.to_string())).or_default().add(row);
    }
    println!("{:<9} {:<9} {:>6} {:>5} {:>5} {:>8} {:>8}", "reduction", "variant", "pass", "yes", "no", "max-yes", "min-no");
    for ((c, v), t) in &groups {
        println!(
            "{c:<9} {v:<9} {:>6} {:>5} {:>5} {:>8} {:>8}",
            format!("{}/{}", t.passed, t.total),
            t.yes,
            t.no,
            t.max_yes.map(|d| d.to_string()).unwrap_or_else(|| "-".into()),
            t.min_no.map(|d| d.to_string()).unwrap_or_else(|| "-".into()),
        );
    }
    let failed = rows.iter().filter(|r| !r.pass()).count();
    println!("{} rows, {} failed, {secs:.1}s", rows.len(), failed);
    if let Some(path) = csv {
        let mut text = String::from(GapReport::csv_header());
        text.push('\n');
        for row in rows {
            text.push_str(&row.csv_row());
            text.push('\n');
        }
        emit(Some(path), &text)?;
    }
    if failed > 0 {
        return Err(Fail::Verification(format!("{failed} of {} rows failed", rows.len())));
    }
    Ok(())
}

fn describe(row: &GapReport) -> String {
    let mut s = format!(
        "{} {} n={} m={} d={} {}",
        row.construction,
        row.variant,
        row.n,
        row.m,
        row.d,
        if row.oracle_yes() { "YES" } else { "NO" }
    );
    if let Some(seed) = row.seed {
        s += &format!(" seed={seed}");
    }
    if let Some((i, j)) = row.pair {
        s += &format!(" pair=({},{})", i + 1, j + 1);
    }
    if let Some(r) = row.resolved {
        s += &format!(" resolved={r} ({:?})", row.class);
    }
    if let Some(d) = row.distance {
        s += &format!(" dist={d}");
    }
    if let Some((a, b)) = row.sizes {
        s += &format!(" |P|={a} |Q|={b}");
    }
    if let Some(e) = &row.error {
        s += &format!(" error={e}");
    }
    s + if row.pass() { " PASS" } else { " FAIL" }
}

#[derive(Default)]
struct Tally {
    total: usize,
    passed: usize,
    yes: usize,
    no: usize,
    max_yes: Option<Dist>,
    min_no: Option<Dist>,
}

impl Tally {
    fn add(&mut self, row: &GapReport) {
        self.total += 1;
        self.passed += row.pass() as usize;
        if row.oracle_yes() {
            self.yes += 1;
            self.max_yes = self.max_yes.max(row.distance);
        } else {
            self.no += 1;
            if let Some(d) = row.distance {
                self.min_no = Some(self.min_no.map_or(d, |m| m.min(d)));
            }
        }
    }
}

fn bench(algo: Algo, sizes: &[usize], seed: u64, runs: usize, out: Option<&Path>) -> CliResult {
    if runs < 3 {
        return Err(Fail::Usage("--runs must be at least 3".into()));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Fail::Usage("--sizes must be strictly ascending".into()));
    }
    let mut text = String::from("size,median_ns\n");
    for &n in sizes {
        let (p, q) = bench_curves(n, seed)?;
        let mut times: Vec<u128> = (0..runs)
            .map(|_| {
                let t = Instant::now();
                let r = match algo {
                    Algo::Weak1dLinear => weak_frechet_1d_linear(&p, &q).map(Dist::from_rational),
                    Algo::WeakQuadratic => exact(Variant::WF, &p, &q),
                    Algo::Engine => exact(Variant::F, &p, &q),
                };
                std::hint::black_box(r).map(|_| t.elapsed().as_nanos())
            })
            .collect::<Result<_, _>>()?;
        times.sort();
        text += &format!("{n},{}\n", times[times.len() / 2]);
    }
    emit(out, &text)
}

/// Two random 1D curves of `n` vertices each, fixed by `(n, seed)`.
fn bench_curves(n: usize, seed: u64) -> CliResult<(Curve, Curve)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).rotate_left(32));
    let mut draw = || (0..n.max(1)).map(|_| rng.random_range(-1_000_000..=1_000_000)).collect::<Vec<i64>>();
    let (a, b) = (draw(), draw());
    Ok((Curve::from_ints(&a)?, Curve::from_ints(&b)?))
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn read_curve(path: &Path) -> CliResult<Curve> {
    Curve::from_json(&read(path)?).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn read_instance(path: &Path) -> CliResult<OvInstance> {
    OvInstance::parse(&read(path)?).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

/// Writes to `path`, or stdout without one.
fn emit(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Fail::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
