//! Command bodies. Each returns the artifact text it would write; the CLI
//! layer handles paths, manifests and exit codes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use gqtsp_core::budget::QubitBudget;
use gqtsp_core::clc::ClcConfig;
use gqtsp_core::gas::{
    isolating_threshold, run_gqtsp, sweep, ExperimentResult, GasConfig, HcdKind, Incumbent,
    SweepReport,
};
use gqtsp_core::hcd::HcdOracle;
use gqtsp_core::program::{GroverProgram, SimulationMode};
use gqtsp_core::statevector::bitstring;
use gqtsp_core::synth::Direction;
use gqtsp_core::tsp::{brute_force_best, normalize_phases_with, BruteForce, PhaseScaling, TspGraph, TspInstance};
use serde::Serialize;

use crate::error::{CliError, Result};

/// Largest instance brute-forced to check a solve.
pub const BRUTE_FORCE_LIMIT: usize = 10;

/// Cities from which full solves need an explicit override.
pub const LARGE_SOLVE: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct TourSummary {
    pub tour: Vec<usize>,
    pub cost: f64,
    pub word: String,
    pub bucket: u64,
}

impl TourSummary {
    fn from_incumbent(i: &Incumbent, q: usize) -> TourSummary {
        TourSummary { tour: i.tour.clone(), cost: i.cost, word: bitstring(i.word, q), bucket: i.bucket }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OptimumSummary {
    pub tour: Vec<usize>,
    pub cost: f64,
    pub cycles: usize,
}

impl OptimumSummary {
    fn from_brute(b: &BruteForce) -> Option<OptimumSummary> {
        b.best().map(|c| OptimumSummary { tour: c.tour.clone(), cost: c.cost, cycles: b.cycles.len() })
    }
}

/// Text printed after `gen`.
pub fn describe_graph(graph: &TspGraph) -> Result<String> {
    let inst = TspInstance::new(graph.clone())?;
    let brute = brute_force_best(&inst);
    let mut s = format!(
        "cities={} edges={} max_degree={} choice_bits={}\n",
        graph.cities(),
        graph.edges().len(),
        graph.max_degree(),
        inst.encoding().choice_bits
    );
    match brute.best() {
        Some(b) => writeln!(s, "optimum cost={} tour={:?} cycles={}", b.cost, b.tour, brute.cycles.len()).unwrap(),
        None => s.push_str("no Hamiltonian cycle\n"),
    }
    Ok(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct BudgetSummary {
    pub total: usize,
    pub cycle: usize,
    pub shared_pool: usize,
    pub flags: usize,
    pub recursion: usize,
    pub anchor_k: usize,
    pub anchors: usize,
}

impl From<&QubitBudget> for BudgetSummary {
    fn from(b: &QubitBudget) -> BudgetSummary {
        BudgetSummary {
            total: b.total,
            cycle: b.cycle,
            shared_pool: b.shared_pool,
            flags: b.flags,
            recursion: b.recursion,
            anchor_k: b.plan.k,
            anchors: b.plan.anchors,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundSummary {
    pub round: usize,
    pub threshold: u64,
    pub iterations: u64,
    pub valid_samples: u64,
    pub best_sample: Option<TourSummary>,
    pub incumbent_cost: Option<f64>,
    pub improved: bool,
    /// Sampled cycle-register values, keyed by bitstring (qubit 0 rightmost).
    pub histogram: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub format: &'static str,
    pub version: u32,
    pub cities: usize,
    pub choice_bits: usize,
    pub precision: usize,
    pub shots: u64,
    pub seed: u64,
    pub hcd: String,
    pub mode: String,
    pub best: TourSummary,
    pub initial: Option<TourSummary>,
    pub optimum: Option<OptimumSummary>,
    /// Whether `best` matches the brute-force optimum cost; absent when the
    /// instance is too large to brute-force.
    pub optimal: Option<bool>,
    pub rounds: Vec<RoundSummary>,
    pub budget: BudgetSummary,
    pub simulated_qubits: usize,
    pub step_gates: usize,
    pub step_depth: usize,
    pub warning: bool,
    pub objective: Objective,
}

/// Which tour the search looks for.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// Shortest tour.
    #[default]
    Min,
    /// Longest tour: the search runs on costs `max − c` and reports
    /// original costs.
    Max,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub gas: GasConfig,
    pub objective: Objective,
    pub allow_large: bool,
}

pub fn hcd_name(k: HcdKind) -> &'static str {
    match k {
        HcdKind::Naive => "naive",
        HcdKind::Improved => "improved",
        HcdKind::Anchored => "anchored",
    }
}

pub fn mode_name(m: SimulationMode) -> &'static str {
    match m {
        SimulationMode::Compiled => "compiled",
        SimulationMode::GateLevel => "gate-level",
    }
}

pub fn solve(graph: &TspGraph, opts: &SolveOptions) -> Result<SolveReport> {
    if graph.cities() >= LARGE_SOLVE && !opts.allow_large {
        return Err(CliError::Refused(format!(
            "a full solve at N={} simulates more qubits than a desktop holds; pass --allow-large to try anyway",
            graph.cities()
        )));
    }
    let searched = match opts.objective {
        Objective::Min => graph.clone(),
        Objective::Max => reflect_costs(graph)?,
    };
    let inst = TspInstance::new(searched)?;
    let q = inst.encoding().search_qubits();
    let result: ExperimentResult = run_gqtsp(&inst, &opts.gas)?;
    let best = result.best.as_ref().ok_or(gqtsp_core::Error::NoHamiltonianCycle)?;
    let optimum = (graph.cities() <= BRUTE_FORCE_LIMIT).then(|| brute_force_best(&inst));
    let optimum = optimum.as_ref().and_then(OptimumSummary::from_brute);
    let optimal = optimum.as_ref().map(|o| same_cost(o.cost, best.cost));
    let rounds = result
        .rounds
        .iter()
        .map(|r| RoundSummary {
            round: r.round,
            threshold: r.threshold,
            iterations: r.iterations,
            valid_samples: r.valid_samples,
            best_sample: r.best_sample.as_ref().map(|i| TourSummary::from_incumbent(i, q)),
            incumbent_cost: r.incumbent_cost,
            improved: r.improved,
            histogram: r.counts.iter().map(|(&v, &c)| (bitstring(v, q), c)).collect(),
        })
        .collect();
    let mut report = SolveReport {
        format: "gqtsp-solve",
        version: 1,
        cities: inst.cities(),
        choice_bits: inst.encoding().choice_bits,
        precision: opts.gas.precision,
        shots: opts.gas.shots,
        seed: opts.gas.seed,
        hcd: hcd_name(opts.gas.hcd).to_string(),
        mode: mode_name(opts.gas.mode).to_string(),
        best: TourSummary::from_incumbent(best, q),
        initial: result.initial.as_ref().map(|i| TourSummary::from_incumbent(i, q)),
        optimum,
        optimal,
        rounds,
        budget: BudgetSummary::from(&result.budget),
        simulated_qubits: result.simulated_qubits,
        step_gates: result.step_stats.gates,
        step_depth: result.step_stats.depth,
        warning: result.warning,
        objective: opts.objective,
    };
    if opts.objective == Objective::Max {
        // Every tour has N roads, so `Σ(max − c) = N·max − Σc`.
        let total = graph.cities() as f64 * graph.max_cost();
        let back = |c: &mut f64| *c = total - *c;
        back(&mut report.best.cost);
        if let Some(i) = report.initial.as_mut() {
            back(&mut i.cost);
        }
        if let Some(o) = report.optimum.as_mut() {
            back(&mut o.cost);
        }
        for r in &mut report.rounds {
            if let Some(b) = r.best_sample.as_mut() {
                back(&mut b.cost);
            }
            if let Some(c) = r.incumbent_cost.as_mut() {
                back(c);
            }
        }
    }
    Ok(report)
}

fn reflect_costs(graph: &TspGraph) -> Result<TspGraph> {
    let max = graph.max_cost();
    let edges: Vec<_> = graph.edges().into_iter().map(|(i, j, c)| (i, j, max - c)).collect();
    let g = TspGraph::from_edges(graph.cities(), &edges)?;
    Ok(match graph.coordinates() {
        Some(c) => g.with_coordinates(c.to_vec())?,
        None => g,
    })
}

fn same_cost(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub precision: usize,
    pub scaling: PhaseScaling,
    pub iterations: u64,
    /// Comparator threshold; defaults to the isolating threshold.
    pub threshold: Option<u64>,
    pub hcd: HcdKind,
    pub mode: SimulationMode,
    pub max_qubits: usize,
    pub allow_large: bool,
}

pub fn run_sweep(graph: &TspGraph, opts: &SweepOptions) -> Result<SweepReport> {
    if graph.cities() >= LARGE_SOLVE && !opts.allow_large {
        return Err(CliError::Refused(format!(
            "a sweep at N={} simulates more qubits than a desktop holds; pass --allow-large to try anyway",
            graph.cities()
        )));
    }
    let inst = TspInstance::new(graph.clone())?;
    let brute = brute_force_best(&inst);
    if brute.is_empty() {
        return Err(gqtsp_core::Error::NoHamiltonianCycle.into());
    }
    let phases = normalize_phases_with(&inst, opts.precision, opts.scaling)?;
    let threshold = match opts.threshold {
        Some(t) => t,
        None => isolating_threshold(&brute, &phases)?,
    };
    let clc = ClcConfig::new(phases, inst.encoding(), threshold, Direction::Greater)?;
    let oracle = HcdOracle::new(&inst, opts.hcd.variant(&inst))?;
    let program = GroverProgram::build(&inst, &clc, &oracle, opts.mode)?;
    Ok(sweep(&inst, &brute, &program, &clc, opts.iterations, opts.max_qubits)?)
}

pub const SWEEP_HEADER: &str = "iteration,p1,p2,p3";

pub fn sweep_csv(report: &SweepReport) -> String {
    let mut s = String::from(SWEEP_HEADER);
    s.push('\n');
    for r in &report.rows {
        writeln!(s, "{},{},{},{}", r.iteration, r.p[0], r.p[1], r.p[2]).unwrap();
    }
    s
}

pub fn describe_sweep(report: &SweepReport) -> String {
    let mut s = format!("threshold={} marked={}", report.threshold, report.marked_count);
    if let Some(e) = report.estimated_iterations {
        write!(s, " estimated_iterations={e}").unwrap();
    }
    if let Some(b) = report.best_iteration() {
        write!(s, " best_iteration={} p1={:.6}", b.iteration, b.p[0]).unwrap();
    }
    let worst = report.rows.iter().map(|r| r.clean).fold(1.0f64, f64::min);
    write!(s, " min_clean={worst:.9}").unwrap();
    s.push('\n');
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct QubitRow {
    pub cities: usize,
    pub degree: usize,
    pub sparse_choice_bits: usize,
    pub sparse_total: usize,
    pub dense_choice_bits: usize,
    pub dense_total: usize,
    pub unoptimized: usize,
    /// `mN + 2√N·log₂N + σ₀(N)` for the sparse encoding.
    pub asymptotic: f64,
    pub anchor_k: usize,
    pub anchors: usize,
    pub breakdown: Vec<(String, usize)>,
}

pub fn qubit_report(cities: RangeInclusive<usize>, degree: usize, precision: usize) -> Result<Vec<QubitRow>> {
    cities
        .map(|n| {
            let sparse = QubitBudget::sparse(n, degree, precision)?;
            let dense = QubitBudget::dense(n, precision)?;
            Ok(QubitRow {
                cities: n,
                degree,
                sparse_choice_bits: sparse.choice_bits,
                sparse_total: sparse.total,
                dense_choice_bits: dense.choice_bits,
                dense_total: dense.total,
                unoptimized: sparse.unoptimized,
                asymptotic: sparse.asymptotic,
                anchor_k: sparse.plan.k,
                anchors: sparse.plan.anchors,
                breakdown: sparse.breakdown().into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            })
        })
        .collect()
}

pub fn qubit_table(rows: &[QubitRow]) -> String {
    let mut s = String::from("   N  m  sparse  dense  unopt  asymptotic  k  L  breakdown\n");
    for r in rows {
        let parts: Vec<String> = r.breakdown.iter().map(|(_, v)| v.to_string()).collect();
        writeln!(
            s,
            "{:>4} {:>2} {:>7} {:>6} {:>6} {:>11.2} {:>2} {:>2}  {}={}",
            r.cities,
            r.sparse_choice_bits,
            r.sparse_total,
            r.dense_total,
            r.unoptimized,
            r.asymptotic,
            r.anchor_k,
            r.anchors,
            parts.join("+"),
            r.sparse_total
        )
        .unwrap();
    }
    s
}

/// Qubits actually allocated by the gate-level program for `inst`.
pub fn allocated_qubits(inst: &TspInstance, precision: usize) -> Result<usize> {
    let phases = normalize_phases_with(inst, precision, PhaseScaling::Fit)?;
    let clc = ClcConfig::new(phases, inst.encoding(), 0, Direction::Greater)?;
    let oracle = HcdOracle::new(inst, HcdKind::Anchored.variant(inst))?;
    Ok(GroverProgram::gate_level(&clc, &oracle)?.qubits())
}
