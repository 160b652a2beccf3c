//! The `ramsey` command line.
//!
//! Every structured result is a JSON [`Report`] carrying a run manifest;
//! `chi` and `encode` print kcol text instead. Exit codes: 0 success,
//! 2 bad input or failed precondition, 3 budget exhausted.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::coloring::TwoColoring;
use crate::count::mono_counts;
use crate::error::Error;
use crate::extremal::instances::{run_claim_suite, two_matching_exhaustive, StructuredClaim};
use crate::extremal::{case2_lower_bound, chi, extremal_parameter, ExtremalMode};
use crate::graph::VertexSet;
use crate::kcol;
use crate::pattern::PatternGraph;
use crate::regular::{verify_counting_lemma, CountingLemma, GridSpec, RegimeParams, RegularityMode};
use crate::report::{Report, RunManifest, Status};
use crate::search::{self, Budget, SearchOptions, Symmetry};
use crate::stability::{block_partition, main2_classify, random_equitable_partition};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Environment override for the default node budget.
pub const BUDGET_ENV: &str = "RAMSEY_BUDGET_NODES";

#[derive(Parser, Debug)]
#[command(name = "ramsey", version, about = "Ramsey multiplicity search and verification tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimum number of monochromatic copies of a pattern in 2-colorings of K_n.
    Mult(MultArgs),
    /// Smallest n forcing a monochromatic copy.
    RamseyNumber(RamseyArgs),
    /// Multiplicity at the Ramsey number.
    Threshold(RamseyArgs),
    /// Two blue cliques of sizes a and b joined by red edges, as kcol.
    Chi(ChiArgs),
    /// Smallest λ for which a coloring is extremal.
    ExtremalLambda(ExtremalArgs),
    /// Certified lower bound on monochromatic k-cycles of a near-extremal coloring.
    Case2(Case2Args),
    /// Check a structural cycle-count claim on seeded instances.
    VerifyClaim(VerifyClaimArgs),
    /// Compare counting-lemma bounds with exact counts over a generator grid.
    VerifyLemma(VerifyLemmaArgs),
    /// Classify a partitioned coloring into ring / extremal / inconclusive.
    Classify(ClassifyArgs),
    /// Count red and blue copies of a pattern.
    Count(CountArgs),
    /// Write kcol text for a coloring given by its red edges.
    Encode(EncodeArgs),
    /// Parse kcol text and list the coloring.
    Decode(DecodeArgs),
}

#[derive(Args, Debug, Clone)]
struct BudgetArgs {
    /// Search node budget (default: $RAMSEY_BUDGET_NODES, else 2e10).
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Wall-clock budget in milliseconds.
    #[arg(long)]
    max_time_ms: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, value_enum, default_value_t = SymmetryArg::Transpositions)]
    symmetry: SymmetryArg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SymmetryArg {
    None,
    ColorSwap,
    Transpositions,
    Full,
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MultArgs {
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    n: usize,
    /// Persist finished search tasks here and resume from it.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct RamseyArgs {
    #[arg(long)]
    pattern: String,
    #[arg(long, default_value_t = search::DEFAULT_EXHAUSTIVE_LIMIT)]
    n_max: usize,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct ChiArgs {
    #[arg(long)]
    a: usize,
    #[arg(long)]
    b: usize,
    /// kcol output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum ExtremalModeArg {
    Exact,
    Local,
}

#[derive(Args, Debug)]
struct ExtremalArgs {
    /// kcol input (stdin when absent).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ExtremalModeArg::Exact)]
    mode: ExtremalModeArg,
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    /// Required for local search.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct Case2Args {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    k: usize,
    /// Part A as `lo-hi` or a comma list; B is the rest. Default: the best exact bipartition.
    #[arg(long = "A")]
    a: Option<String>,
    #[arg(long)]
    lambda: f64,
    /// Also brute-count monochromatic k-cycles and compare.
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct VerifyClaimArgs {
    /// common-neighbor | bridged-cliques | alternating | two-matching
    #[arg(long)]
    claim: String,
    #[arg(long, default_value_t = 200)]
    count: u64,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest side for the exhaustive two-matching check.
    #[arg(long, default_value_t = 4)]
    max_side: usize,
    /// Print the rows as CSV instead of a JSON report.
    #[arg(long)]
    csv: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct VerifyLemmaArgs {
    /// countpath2-p1 | countpath2-p2 | countcycle1
    #[arg(long)]
    lemma: String,
    /// default | smoke
    #[arg(long, default_value = "default")]
    grid: String,
    /// Override the number of instances per cell.
    #[arg(long)]
    instances: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    csv: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// `auto-random:M=<m>`, `blocks:M=<m>`, or explicit parts `0,1,2;3,4;...`.
    #[arg(long)]
    parts: String,
    #[arg(long)]
    eps: f64,
    /// Density threshold; default 12√ε.
    #[arg(long)]
    d: Option<f64>,
    /// Default 20√ε.
    #[arg(long)]
    alpha: Option<f64>,
    /// Extremal threshold; default 300√α.
    #[arg(long)]
    lambda: Option<f64>,
    /// Sampled regularity with this many samples instead of exact.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long)]
    pattern: String,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct EncodeArgs {
    #[arg(long)]
    n: usize,
    /// Red edges as `u-v,u-v,...`; all other pairs are blue.
    #[arg(long, default_value = "")]
    red: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DecodeArgs {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[command(flatten)]
    out: OutArgs,
}

/// A failure with the flag it concerns and the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(flag: &str, e: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_INPUT, message: format!("{flag}: {e}") }
    }

    fn from_error(flag: &str, e: Error) -> Self {
        let code = if matches!(e, Error::BudgetExhausted { .. }) { EXIT_BUDGET } else { EXIT_INPUT };
        Failure { code, message: format!("{flag}: {e}") }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

struct Ctx {
    manifest: RunManifest,
}

impl Ctx {
    fn read_input(&mut self, path: &Option<PathBuf>) -> CliResult<String> {
        let (name, bytes) = match path {
            Some(p) => (p.display().to_string(), fs::read(p).map_err(|e| Failure::input("--in", e))?),
            None => {
                let mut buf = Vec::new();
                io::stdin().read_to_end(&mut buf).map_err(|e| Failure::input("stdin", e))?;
                ("<stdin>".to_string(), buf)
            }
        };
        self.manifest.add_input(&name, &bytes);
        String::from_utf8(bytes).map_err(|e| Failure::input("--in", e))
    }

    fn read_coloring(&mut self, path: &Option<PathBuf>) -> CliResult<TwoColoring> {
        let text = self.read_input(path)?;
        kcol::decode(&text).map_err(|e| Failure::from_error("--in", e))
    }

    fn emit<T: Serialize>(&mut self, command: &str, status: Status, out: &OutArgs, result: T) -> CliResult<i32> {
        self.manifest.finish();
        let report = Report::new(command, status, self.manifest.clone(), result);
        write_text(&out.out, &(report.to_json() + "\n"))?;
        Ok(if status == Status::Partial { EXIT_BUDGET } else { EXIT_OK })
    }
}

fn write_text(path: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::input("--out", e)),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| Failure::input("stdout", e))
        }
    }
}

fn write_csv<T: Serialize>(path: &Option<PathBuf>, rows: &[T]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::input("--csv", e))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::input("--csv", e))?;
    write_text(path, &String::from_utf8_lossy(&bytes))
}

fn pattern(s: &str) -> CliResult<PatternGraph> {
    s.parse().map_err(|e| Failure::from_error("--pattern", e))
}

fn require_seed(seed: Option<u64>, what: &str) -> CliResult<u64> {
    seed.ok_or_else(|| Failure::input("--seed", format!("a seed is required for {what}")))
}

impl BudgetArgs {
    fn resolve(&self) -> CliResult<Budget> {
        let env = match std::env::var(BUDGET_ENV) {
            Ok(v) => Some(v.trim().parse::<u64>().map_err(|e| Failure::input(BUDGET_ENV, e))?),
            Err(_) => None,
        };
        let mut b = Budget::default().with_threads(self.threads).with_symmetry(match self.symmetry {
            SymmetryArg::None => Symmetry::None,
            SymmetryArg::ColorSwap => Symmetry::ColorSwap,
            SymmetryArg::Transpositions => Symmetry::Transpositions,
            SymmetryArg::Full => Symmetry::Full,
        });
        if let Some(n) = self.budget_nodes.or(env) {
            b = b.with_max_nodes(n);
        }
        b.max_time = self.max_time_ms.map(Duration::from_millis);
        Ok(b)
    }
}

fn parse_set(s: &str, flag: &str) -> CliResult<VertexSet> {
    let mut out = VertexSet::EMPTY;
    for piece in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|e| Failure::input(flag, format!("{t:?}: {e}")));
        let (lo, hi) = match piece.split_once('-') {
            Some((a, b)) => (num(a)?, num(b)?),
            None => (num(piece)?, num(piece)?),
        };
        if lo > hi || hi >= crate::graph::MAX_VERTICES {
            return Err(Failure::input(flag, format!("bad range {piece:?}")));
        }
        for v in lo..=hi {
            out.insert(v);
        }
    }
    Ok(out)
}

fn parse_parts(desc: &str, n: usize, seed: Option<u64>) -> CliResult<Vec<VertexSet>> {
    let m_of = |rest: &str| -> CliResult<usize> {
        rest.strip_prefix("M=")
            .and_then(|m| m.parse().ok())
            .ok_or_else(|| Failure::input("--parts", format!("expected M=<parts>, got {rest:?}")))
    };
    if let Some(rest) = desc.strip_prefix("auto-random:") {
        let seed = require_seed(seed, "random partitions")?;
        return random_equitable_partition(n, m_of(rest)?, seed).map_err(|e| Failure::from_error("--parts", e));
    }
    if let Some(rest) = desc.strip_prefix("blocks:") {
        return block_partition(n, m_of(rest)?).map_err(|e| Failure::from_error("--parts", e));
    }
    desc.split(';').map(|p| parse_set(p, "--parts")).collect()
}

#[derive(Serialize)]
struct CountResult {
    pattern: PatternGraph,
    n: usize,
    red: u128,
    blue: u128,
    total: u128,
}

#[derive(Serialize)]
struct DecodeResult {
    n: usize,
    red_edges: Vec<(usize, usize)>,
    red: usize,
    blue: usize,
}

#[derive(Serialize)]
struct ExtremalResult {
    mode: ExtremalMode,
    assessment: crate::extremal::ExtremalAssessment,
}

#[derive(Serialize)]
struct Case2Result {
    certificate: crate::extremal::CaseTwoCertificate,
    /// Brute-force count of monochromatic k-cycles, with `--verify`.
    mono_count: Option<u128>,
    sound: Option<bool>,
}

#[derive(Serialize)]
struct ClaimSuiteResult {
    claim: StructuredClaim,
    seed: u64,
    count: u64,
    passed: u64,
    failed: u64,
    rows: Vec<crate::extremal::instances::ClaimRow>,
}

#[derive(Serialize)]
struct LemmaCsvRow<'a> {
    t: usize,
    class_size: usize,
    family: &'a str,
    instance: u64,
    eps_hat: f64,
    d: f64,
    length: u64,
    bound: f64,
    exact: Option<u128>,
    verdict: crate::regular::Verdict,
    unmet: String,
}

fn run_command(cmd: Command, ctx: &mut Ctx) -> CliResult<i32> {
    match cmd {
        Command::Mult(a) => {
            let h = pattern(&a.pattern)?;
            let budget = a.budget.resolve()?;
            ctx.manifest.budget = serde_json::to_value(&budget).ok();
            let opts = SearchOptions { budget, checkpoint: a.checkpoint };
            let r = search::multiplicity_with(&h, a.n, &opts).map_err(|e| Failure::from_error("--n", e))?;
            let status = if r.exact { Status::Ok } else { Status::Partial };
            ctx.emit("mult", status, &a.out, r)
        }
        Command::RamseyNumber(a) => {
            let h = pattern(&a.pattern)?;
            let budget = a.budget.resolve()?;
            ctx.manifest.budget = serde_json::to_value(&budget).ok();
            let r = search::ramsey_number(&h, a.n_max, &budget).map_err(|e| Failure::from_error("--n-max", e))?;
            let status =
                if matches!(r.outcome, search::RamseyOutcome::Unknown { .. }) { Status::Partial } else { Status::Ok };
            ctx.emit("ramsey-number", status, &a.out, r)
        }
        Command::Threshold(a) => {
            let h = pattern(&a.pattern)?;
            let budget = a.budget.resolve()?;
            ctx.manifest.budget = serde_json::to_value(&budget).ok();
            let r =
                search::threshold_multiplicity(&h, a.n_max, &budget).map_err(|e| Failure::from_error("--n-max", e))?;
            let exact = r.multiplicity.as_ref().is_some_and(|m| m.exact);
            let known = matches!(r.ramsey.outcome, search::RamseyOutcome::Exact { .. });
            let status = if known && !exact || matches!(r.ramsey.outcome, search::RamseyOutcome::Unknown { .. }) {
                Status::Partial
            } else {
                Status::Ok
            };
            ctx.emit("threshold", status, &a.out, r)
        }
        Command::Chi(a) => {
            let c = chi(a.a, a.b).map_err(|e| Failure::from_error("--a/--b", e))?;
            write_text(&a.out, &kcol::encode(&c))?;
            Ok(EXIT_OK)
        }
        Command::ExtremalLambda(a) => {
            let c = ctx.read_coloring(&a.input)?;
            let mode = match a.mode {
                ExtremalModeArg::Exact => ExtremalMode::Exact,
                ExtremalModeArg::Local => {
                    let seed = require_seed(a.seed, "local search")?;
                    ctx.manifest.seed = Some(seed);
                    ExtremalMode::LocalSearch { restarts: a.restarts, seed }
                }
            };
            let assessment = extremal_parameter(&c, mode).map_err(|e| Failure::from_error("--mode", e))?;
            ctx.emit("extremal-lambda", Status::Ok, &a.out, ExtremalResult { mode, assessment })
        }
        Command::Case2(a) => {
            let c = ctx.read_coloring(&a.input)?;
            let all = VertexSet::full(c.n());
            let part_a = match &a.a {
                Some(s) => parse_set(s, "--A")?,
                None => extremal_parameter(&c, ExtremalMode::Exact).map_err(|e| Failure::from_error("--A", e))?.a,
            };
            if !part_a.is_subset(all) {
                return Err(Failure::input("--A", format!("vertices outside 0..{}", c.n())));
            }
            let cert = case2_lower_bound(&c, a.k, part_a, all.difference(part_a), a.lambda)
                .map_err(|e| Failure::from_error("--lambda", e))?;
            let mono_count = if a.verify {
                let h = PatternGraph::cycle(a.k).map_err(|e| Failure::from_error("--k", e))?;
                let (r, b) = mono_counts(&c, &h).map_err(|e| Failure::from_error("--k", e))?;
                Some(r + b)
            } else {
                None
            };
            let sound = mono_count.map(|m| cert.bound <= m);
            ctx.emit("case2", Status::Ok, &a.out, Case2Result { certificate: cert, mono_count, sound })
        }
        Command::VerifyClaim(a) => {
            let seed = require_seed(a.seed, "seeded claim instances")?;
            ctx.manifest.seed = Some(seed);
            if a.claim == "two-matching" {
                let s = two_matching_exhaustive(a.max_side).map_err(|e| Failure::from_error("--max-side", e))?;
                if a.csv {
                    write_csv(&a.out.out, &[s])?;
                    return Ok(EXIT_OK);
                }
                return ctx.emit("verify-claim", Status::Ok, &a.out, s);
            }
            let claim: StructuredClaim = a.claim.parse().map_err(|e| Failure::from_error("--claim", e))?;
            let rows = run_claim_suite(claim, a.count, seed).map_err(|e| Failure::from_error("--claim", e))?;
            if a.csv {
                write_csv(&a.out.out, &rows)?;
                return Ok(EXIT_OK);
            }
            let passed = rows.iter().filter(|r| r.pass).count() as u64;
            let result = ClaimSuiteResult { claim, seed, count: a.count, passed, failed: a.count - passed, rows };
            ctx.emit("verify-claim", Status::Ok, &a.out, result)
        }
        Command::VerifyLemma(a) => {
            let seed = require_seed(a.seed, "the instance generator")?;
            ctx.manifest.seed = Some(seed);
            let lemma: CountingLemma = a.lemma.parse().map_err(|e| Failure::from_error("--lemma", e))?;
            let mut grid = match a.grid.as_str() {
                "default" => GridSpec::default(),
                "smoke" => GridSpec::smoke(),
                other => return Err(Failure::input("--grid", format!("unknown grid {other:?} (default | smoke)"))),
            };
            if let Some(k) = a.instances {
                grid.instances = k;
            }
            let report = with_threads(a.threads, || verify_counting_lemma(&grid, lemma, seed))?
                .map_err(|e| Failure::from_error("--lemma", e))?;
            if a.csv {
                let rows: Vec<LemmaCsvRow> = report
                    .rows
                    .iter()
                    .map(|r| LemmaCsvRow {
                        t: r.t,
                        class_size: r.class_size,
                        family: &r.family,
                        instance: r.instance,
                        eps_hat: r.eps_hat,
                        d: r.d,
                        length: r.length,
                        bound: r.bound,
                        exact: r.exact,
                        verdict: r.verdict,
                        unmet: r.unmet.join("; "),
                    })
                    .collect();
                write_csv(&a.out.out, &rows)?;
                return Ok(EXIT_OK);
            }
            ctx.emit("verify-lemma", Status::Ok, &a.out, report)
        }
        Command::Classify(a) => {
            let c = ctx.read_coloring(&a.input)?;
            let parts = parse_parts(&a.parts, c.n(), a.seed)?;
            if !(a.eps > 0.0 && a.eps < 1.0) {
                return Err(Failure::input("--eps", "must lie in (0,1)"));
            }
            let mut p = RegimeParams::strict(a.eps, 0, parts.len()).map_err(|e| Failure::from_error("--eps", e))?;
            if a.d.is_some() || a.alpha.is_some() || a.lambda.is_some() {
                p.mode = crate::regular::ParamMode::Explorer;
            }
            if let Some(d) = a.d {
                p.d = d;
            }
            if let Some(al) = a.alpha {
                p.alpha = al;
                p.lambda = 300.0 * al.sqrt();
            }
            if let Some(l) = a.lambda {
                p.lambda = l;
            }
            let reg = match a.samples {
                Some(samples) => {
                    RegularityMode::Randomized { samples, seed: require_seed(a.seed, "sampled regularity")? }
                }
                None => RegularityMode::Exact,
            };
            ctx.manifest.seed = a.seed;
            let extremal = if c.n() <= crate::extremal::EXACT_EXTREMAL_LIMIT {
                ExtremalMode::Exact
            } else {
                ExtremalMode::LocalSearch { restarts: 64, seed: require_seed(a.seed, "local extremal search")? }
            };
            let r = main2_classify(&c, &parts, &p, reg, extremal).map_err(|e| Failure::from_error("--parts", e))?;
            ctx.emit("classify", Status::Ok, &a.out, r)
        }
        Command::Count(a) => {
            let h = pattern(&a.pattern)?;
            let c = ctx.read_coloring(&a.input)?;
            let (red, blue) = mono_counts(&c, &h).map_err(|e| Failure::from_error("--pattern", e))?;
            ctx.emit("count", Status::Ok, &a.out, CountResult { pattern: h, n: c.n(), red, blue, total: red + blue })
        }
        Command::Encode(a) => {
            let mut c = TwoColoring::all_blue(a.n).map_err(|e| Failure::from_error("--n", e))?;
            for e in a.red.split(',').map(str::trim).filter(|e| !e.is_empty()) {
                let (u, v) = e
                    .split_once('-')
                    .and_then(|(u, v)| Some((u.trim().parse::<usize>().ok()?, v.trim().parse::<usize>().ok()?)))
                    .ok_or_else(|| Failure::input("--red", format!("bad edge {e:?}")))?;
                if u >= a.n || v >= a.n || u == v {
                    return Err(Failure::input("--red", format!("edge {u}-{v} is not a pair of K_{}", a.n)));
                }
                c.set(u, v, crate::coloring::Color::Red);
            }
            write_text(&a.out, &kcol::encode(&c))?;
            Ok(EXIT_OK)
        }
        Command::Decode(a) => {
            let c = ctx.read_coloring(&a.input)?;
            let red_edges: Vec<(usize, usize)> = c.red_graph().edges().collect();
            let red = red_edges.len();
            let result = DecodeResult { n: c.n(), red_edges, red, blue: c.n() * c.n().saturating_sub(1) / 2 - red };
            ctx.emit("decode", Status::Ok, &a.out, result)
        }
    }
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Failure::input("--threads", e))?;
    Ok(pool.install(f))
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
        }
    };
    let mut ctx = Ctx { manifest: RunManifest::start(args.iter().map(|a| a.to_string_lossy().into_owned()).collect()) };
    match run_command(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("ramsey: {}", f.message);
            f.code
        }
    }
}
