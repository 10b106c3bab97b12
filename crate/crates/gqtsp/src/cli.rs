//! `gqtsp gen|solve|sweep|verify|qubits`.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gqtsp_core::gas::{GasConfig, HcdKind};
use gqtsp_core::program::SimulationMode;
use gqtsp_core::statevector::DEFAULT_MAX_QUBITS;
use gqtsp_core::tsp::{random_euclidean_graph, Metric, PhaseScaling};
use serde::Serialize;

use crate::commands::{
    describe_graph, describe_sweep, Objective, qubit_report, qubit_table, run_sweep, solve, sweep_csv, SolveOptions, SweepOptions,
};
use crate::error::{exit, CliError, Result};
use crate::graph_file::{read_graph, GraphFile};
use crate::manifest::RunManifest;
use crate::verify::{verify, Suite};

#[derive(Debug, Parser)]
#[command(name = "gqtsp", version, about = "Grover adaptive search for small TSP instances, simulated at gate level")]
pub struct Cli {
    /// Record wall-clock time in run manifests (manifests then differ between runs).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a seeded random Euclidean instance.
    Gen(GenArgs),
    /// Run the adaptive search on a graph file and report the best tour.
    Solve(SolveArgs),
    /// Per-iteration probabilities of the three cheapest cycles, as CSV.
    Sweep(SweepArgs),
    /// Exhaustive circuit checks: hcd, clc, mcx or qaqr.
    Verify(VerifyArgs),
    /// Qubit budgets for sparse and dense encodings.
    Qubits(QubitArgs),
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
enum MetricArg {
    Euclidean,
    Squared,
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
enum HcdArg {
    Naive,
    Improved,
    Anchored,
}

impl From<HcdArg> for HcdKind {
    fn from(h: HcdArg) -> HcdKind {
        match h {
            HcdArg::Naive => HcdKind::Naive,
            HcdArg::Improved => HcdKind::Improved,
            HcdArg::Anchored => HcdKind::Anchored,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
enum ModeArg {
    Compiled,
    GateLevel,
}

impl From<ModeArg> for SimulationMode {
    fn from(m: ModeArg) -> SimulationMode {
        match m {
            ModeArg::Compiled => SimulationMode::Compiled,
            ModeArg::GateLevel => SimulationMode::GateLevel,
        }
    }
}

#[derive(Debug, Args, Serialize)]
struct GenArgs {
    /// Number of cities.
    #[arg(long, short = 'n')]
    cities: usize,
    /// Maximum degree after pruning.
    #[arg(long, short = 'd', default_value_t = 4)]
    degree: usize,
    #[arg(long, env = "GQTSP_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = MetricArg::Euclidean)]
    metric: MetricArg,
    /// Output graph file.
    #[arg(long, short = 'o')]
    out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
struct SimArgs {
    /// Phase-estimation readout bits.
    #[arg(long, short = 't', default_value_t = 6)]
    precision: usize,
    /// `fit` or `buckets:Q` (Q readout buckets per cost unit).
    #[arg(long, default_value = "fit", value_parser = parse_scaling)]
    #[serde(serialize_with = "ser_scaling")]
    scaling: PhaseScaling,
    #[arg(long, value_enum, default_value_t = HcdArg::Anchored)]
    hcd: HcdArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Compiled)]
    mode: ModeArg,
    /// Largest statevector, in qubits.
    #[arg(long, env = "GQTSP_MAX_QUBITS", default_value_t = DEFAULT_MAX_QUBITS)]
    max_qubits: usize,
    /// Allow simulating instances with 6 or more cities.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Debug, Args, Serialize)]
struct SolveArgs {
    graph: PathBuf,
    #[command(flatten)]
    sim: SimArgs,
    #[arg(long, default_value_t = 1024)]
    shots: u64,
    #[arg(long, env = "GQTSP_SEED", default_value_t = 0)]
    seed: u64,
    /// Threshold rounds.
    #[arg(long, default_value_t = 5)]
    rounds: usize,
    /// Stop after this many rounds without improvement.
    #[arg(long, default_value_t = 2)]
    patience: usize,
    /// Grover iterations per round (default ⌈π√(2^q)/4⌉).
    #[arg(long)]
    iterations: Option<u64>,
    /// Random valid tours drawn for the first threshold.
    #[arg(long, default_value_t = 8)]
    initial_samples: usize,
    #[arg(long, value_enum, default_value_t = Objective::Min)]
    objective: Objective,
    /// Result JSON (stdout when omitted).
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
struct SweepArgs {
    graph: PathBuf,
    #[command(flatten)]
    sim: SimArgs,
    /// Last iteration in the sweep.
    #[arg(long, short = 'k', default_value_t = 20)]
    iterations: u64,
    /// Comparator threshold (default: isolate the cheapest cycle).
    #[arg(long)]
    threshold: Option<u64>,
    #[arg(long, env = "GQTSP_SEED", default_value_t = 0)]
    seed: u64,
    /// CSV output (stdout when omitted).
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
struct VerifyArgs {
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    /// Inclusive `A..B` or single `A` (cities, controls or address bits by suite).
    #[arg(long, value_parser = parse_range)]
    #[serde(serialize_with = "ser_range")]
    range: Option<RangeInclusive<usize>>,
    #[arg(long, env = "GQTSP_SEED", default_value_t = 0)]
    seed: u64,
    /// JSON report (summary only on stdout).
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
struct QubitArgs {
    #[arg(long, default_value = "4..=8", value_parser = parse_range)]
    #[serde(serialize_with = "ser_range_req")]
    range: RangeInclusive<usize>,
    #[arg(long, short = 'd', default_value_t = 4)]
    degree: usize,
    #[arg(long, short = 't', default_value_t = 6)]
    precision: usize,
    /// JSON output (table on stdout always).
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
}

fn parse_scaling(s: &str) -> std::result::Result<PhaseScaling, String> {
    if s == "fit" {
        return Ok(PhaseScaling::Fit);
    }
    s.strip_prefix("buckets:")
        .and_then(|q| q.parse::<u64>().ok())
        .filter(|&q| q > 0)
        .map(PhaseScaling::BucketsPerUnit)
        .ok_or_else(|| format!("expected `fit` or `buckets:Q`, got `{s}`"))
}

fn ser_scaling<S: serde::Serializer>(s: &PhaseScaling, ser: S) -> std::result::Result<S::Ok, S::Error> {
    match s {
        PhaseScaling::Fit => ser.serialize_str("fit"),
        PhaseScaling::BucketsPerUnit(q) => ser.serialize_str(&format!("buckets:{q}")),
    }
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

/// `A..B`, `A..=B` and `A-B` are all inclusive; `A` alone is `A..=A`.
pub fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad range `{s}`"));
    let (a, b) = match s.split_once("..=").or_else(|| s.split_once("..")).or_else(|| s.split_once('-')) {
        Some((a, b)) => (num(a)?, num(b)?),
        None => (num(s)?, num(s)?),
    };
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok(a..=b)
}

fn ser_range<S: serde::Serializer>(r: &Option<RangeInclusive<usize>>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => ser_range_req(r, ser),
        None => ser.serialize_none(),
    }
}

fn ser_range_req<S: serde::Serializer>(r: &RangeInclusive<usize>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&format!("{}..={}", r.start(), r.end()))
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn config_of<T: Serialize>(args: &T) -> serde_json::Value {
    serde_json::to_value(args).expect("arguments always serialize")
}

fn emit(
    out: &mut dyn Write,
    manifest: RunManifest,
    started: Option<Instant>,
    path: Option<&Path>,
    contents: &str,
) -> Result<()> {
    match path {
        Some(p) => {
            manifest.with_elapsed(started.map(|s| s.elapsed())).write_with(p, contents)?;
        }
        None => out.write_all(contents.as_bytes()).map_err(|e| CliError::io("<stdout>", e))?,
    }
    Ok(())
}

fn print(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    let started = cli.timings.then(Instant::now);
    match &cli.command {
        Command::Gen(a) => {
            let metric = match a.metric {
                MetricArg::Euclidean => Metric::Euclidean,
                MetricArg::Squared => Metric::SquaredEuclidean,
            };
            let graph = random_euclidean_graph(a.cities, a.degree, a.seed, metric)?;
            let doc = GraphFile::from_graph(&graph, a.degree).to_json();
            emit(out, RunManifest::new("gen", Some(a.seed), config_of(a)), started, Some(&a.out), &doc)?;
            print(out, &describe_graph(&graph)?)?;
            Ok(exit::OK)
        }
        Command::Solve(a) => {
            let (graph, _) = read_graph(&a.graph)?;
            let gas = GasConfig {
                precision: a.sim.precision,
                scaling: a.sim.scaling,
                shots: a.shots,
                seed: a.seed,
                max_rounds: a.rounds,
                patience: a.patience,
                iterations: a.iterations,
                initial_samples: a.initial_samples,
                hcd: a.sim.hcd.into(),
                mode: a.sim.mode.into(),
                max_qubits: a.sim.max_qubits,
            };
            let report = solve(&graph, &SolveOptions { gas, objective: a.objective, allow_large: a.sim.allow_large })?;
            let mut json = serde_json::to_string_pretty(&report).expect("reports always serialize");
            json.push('\n');
            emit(out, RunManifest::new("solve", Some(a.seed), config_of(a)), started, a.out.as_deref(), &json)?;
            if report.optimal == Some(false) {
                return Err(CliError::Mismatch(format!(
                    "search returned cost {} but the optimum is {}",
                    report.best.cost,
                    report.optimum.as_ref().map_or(f64::NAN, |o| o.cost)
                )));
            }
            Ok(exit::OK)
        }
        Command::Sweep(a) => {
            let (graph, _) = read_graph(&a.graph)?;
            let opts = SweepOptions {
                precision: a.sim.precision,
                scaling: a.sim.scaling,
                iterations: a.iterations,
                threshold: a.threshold,
                hcd: a.sim.hcd.into(),
                mode: a.sim.mode.into(),
                max_qubits: a.sim.max_qubits,
                allow_large: a.sim.allow_large,
            };
            let report = run_sweep(&graph, &opts)?;
            emit(out, RunManifest::new("sweep", Some(a.seed), config_of(a)), started, a.out.as_deref(), &sweep_csv(&report))?;
            if a.out.is_some() {
                print(out, &describe_sweep(&report))?;
            }
            Ok(exit::OK)
        }
        Command::Verify(a) => {
            let range = a.range.clone().unwrap_or_else(|| a.suite.default_range());
            let report = verify(a.suite, range, a.seed)?;
            print(out, &report.summary())?;
            if let Some(p) = &a.out {
                let mut json = serde_json::to_string_pretty(&report).expect("reports always serialize");
                json.push('\n');
                emit(out, RunManifest::new("verify", Some(a.seed), config_of(a)), started, Some(p), &json)?;
            }
            if report.passed {
                Ok(exit::OK)
            } else {
                Err(CliError::Mismatch(format!("suite {} failed", a.suite)))
            }
        }
        Command::Qubits(a) => {
            let rows = qubit_report(a.range.clone(), a.degree, a.precision)?;
            print(out, &qubit_table(&rows))?;
            if let Some(p) = &a.out {
                let mut json = serde_json::to_string_pretty(&rows).expect("reports always serialize");
                json.push('\n');
                emit(out, RunManifest::new("qubits", None, config_of(a)), started, Some(p), &json)?;
            }
            Ok(exit::OK)
        }
    }
}
