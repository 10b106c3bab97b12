//! Grover adaptive search: iteration-count estimates, the state driver,
//! per-iteration sweeps and the threshold-update loop.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::QubitBudget;
use crate::circuit::CircuitStats;
use crate::clc::ClcConfig;
use crate::error::{Error, Result};
use crate::hcd::{HcdOracle, HcdVariant};
use crate::math::{round, sqrt};
use crate::program::{GroverProgram, SimulationMode};
use crate::statevector::{StateVector, DEFAULT_MAX_QUBITS};
use crate::synth::Direction;
use crate::tsp::{normalize_phases_with, BruteForce, NormalizedPhases, PhaseScaling, TspInstance};

/// Rotation angle `θ = 2·asin(√(M/2^q))` for `M` marked words among `2^q`.
pub fn rotation_angle(search_qubits: usize, marked: u64) -> Result<f64> {
    if search_qubits >= 64 || marked == 0 || marked >= 1u64 << search_qubits {
        return Err(Error::InvalidMarkedCount { marked, qubits: search_qubits });
    }
    let frac = marked as f64 / (1u64 << search_qubits) as f64;
    Ok(2.0 * libm::asin(sqrt(frac)))
}

/// Closest integer to `π/(2θ) − 1/2`: the iteration count that maximises
/// the marked probability when `M` is known.
pub fn estimate_iterations(search_qubits: usize, marked: u64) -> Result<u64> {
    let theta = rotation_angle(search_qubits, marked)?;
    Ok(round(PI / (2.0 * theta) - 0.5).max(0.0) as u64)
}

/// `⌈π√(2^q)/4⌉`: the fixed schedule used when `M` is unknown.
pub fn fixed_iterations(search_qubits: usize) -> u64 {
    libm::ceil(PI * sqrt((1u64 << search_qubits) as f64) / 4.0) as u64
}

/// Marked-set probability after `k` iterations from the uniform state,
/// `sin²((2k+1)θ/2)`.
pub fn rotation_probability(search_qubits: usize, marked: u64, k: u64) -> Result<f64> {
    let theta = rotation_angle(search_qubits, marked)?;
    let s = libm::sin((2 * k + 1) as f64 * theta / 2.0);
    Ok(s * s)
}

/// Applies one iteration of `program` to `state`.
pub fn grover_step(state: &mut StateVector, program: &GroverProgram) -> Result<()> {
    state.apply_circuit(program.step())
}

/// A statevector evolving under a fixed program.
#[derive(Clone, Debug)]
pub struct GroverRun<'p> {
    program: &'p GroverProgram,
    state: StateVector,
    iterations: u64,
}

impl<'p> GroverRun<'p> {
    /// Allocates the state (bounded by `max_qubits`) and prepares the
    /// uniform superposition over the cycle register.
    pub fn new(program: &'p GroverProgram, max_qubits: usize) -> Result<GroverRun<'p>> {
        let mut state = StateVector::with_limit(program.qubits(), max_qubits)?;
        state.apply_circuit(program.prepare())?;
        Ok(GroverRun { program, state, iterations: 0 })
    }

    pub fn step(&mut self) -> Result<()> {
        grover_step(&mut self.state, self.program)?;
        self.iterations += 1;
        Ok(())
    }

    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    /// Distribution of the cycle register value.
    pub fn cycle_distribution(&self) -> Result<Vec<f64>> {
        self.state.marginal(self.program.cycle_qubits())
    }

    /// Probability that every work qubit reads zero.
    pub fn clean_probability(&self) -> Result<f64> {
        self.state.basis_probability(self.program.work_qubits(), 0)
    }

    pub fn sample(&self, shots: u64, seed: u64) -> Result<BTreeMap<u64, u64>> {
        self.state.sample_values(self.program.cycle_qubits(), shots, seed)
    }
}

/// Threshold strictly between the best cycle's bucket and every other
/// cycle's bucket (the midpoint, rounded down).
pub fn isolating_threshold(brute: &BruteForce, phases: &NormalizedPhases) -> Result<u64> {
    let best = brute.best().ok_or(Error::NoHamiltonianCycle)?;
    let b1 = phases.bucket(&best.words[0]);
    let b2 = brute.cycles[1..].iter().map(|c| phases.bucket(&c.words[0])).max();
    match b2 {
        None => Ok(b1.saturating_sub(1)),
        Some(b2) if b2 < b1 => Ok((b1 + b2) / 2),
        Some(_) => Err(Error::NotIsolatable { precision: phases.precision() }),
    }
}

/// Valid words whose exact bucket passes the comparison.
pub fn marked_words(inst: &TspInstance, brute: &BruteForce, clc: &ClcConfig) -> Vec<u64> {
    let mut out: Vec<u64> = brute
        .cycles
        .iter()
        .flat_map(|c| c.words.iter())
        .filter(|w| clc.direction().holds(clc.phases().bucket(w), clc.threshold()))
        .map(|w| inst.value(w))
        .collect();
    out.sort_unstable();
    out
}

/// One row of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub iteration: u64,
    /// Probabilities of the three cheapest undirected cycles (both directions
    /// summed); zero where the instance has fewer cycles.
    pub p: [f64; 3],
    /// Probability of the classically marked set.
    pub marked: f64,
    /// Probability that all work qubits read zero.
    pub clean: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub threshold: u64,
    pub marked_count: u64,
    /// `estimate_iterations` for the marked count, when it is in range.
    pub estimated_iterations: Option<u64>,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    /// Iteration with the largest `p₁` (earliest on ties).
    pub fn best_iteration(&self) -> Option<&SweepRow> {
        self.rows.iter().fold(None, |best: Option<&SweepRow>, r| match best {
            Some(b) if b.p[0] >= r.p[0] => Some(b),
            _ => Some(r),
        })
    }
}

/// Noiseless per-iteration probabilities for `0..=iterations`.
pub fn sweep(
    inst: &TspInstance,
    brute: &BruteForce,
    program: &GroverProgram,
    clc: &ClcConfig,
    iterations: u64,
    max_qubits: usize,
) -> Result<SweepReport> {
    let marked = marked_words(inst, brute, clc);
    let q = inst.encoding().search_qubits();
    let mut run = GroverRun::new(program, max_qubits)?;
    let mut rows = Vec::with_capacity(iterations as usize + 1);
    loop {
        let dist = run.cycle_distribution()?;
        let mut p = [0.0; 3];
        for (slot, c) in p.iter_mut().zip(&brute.cycles) {
            *slot = c.words.iter().map(|w| dist[inst.value(w) as usize]).sum();
        }
        rows.push(SweepRow {
            iteration: run.iterations(),
            p,
            marked: marked.iter().map(|&v| dist[v as usize]).sum(),
            clean: run.clean_probability()?,
        });
        if run.iterations() == iterations {
            break;
        }
        run.step()?;
    }
    Ok(SweepReport {
        threshold: clc.threshold(),
        marked_count: marked.len() as u64,
        estimated_iterations: estimate_iterations(q, marked.len() as u64).ok(),
        rows,
    })
}

/// Which detection oracle the search builds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HcdKind {
    Naive,
    Improved,
    #[default]
    Anchored,
}

impl HcdKind {
    pub fn variant(self, inst: &TspInstance) -> HcdVariant {
        match self {
            HcdKind::Naive => HcdVariant::Naive,
            HcdKind::Improved => HcdVariant::Improved,
            HcdKind::Anchored => HcdVariant::anchored(inst.encoding()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GasConfig {
    /// Readout bits `t`.
    pub precision: usize,
    pub scaling: PhaseScaling,
    pub shots: u64,
    pub seed: u64,
    pub max_rounds: usize,
    /// Stop after this many consecutive rounds without improvement.
    pub patience: usize,
    /// Iterations per round; defaults to [`fixed_iterations`].
    pub iterations: Option<u64>,
    /// Random valid tours drawn to seed the first threshold.
    pub initial_samples: usize,
    pub hcd: HcdKind,
    pub mode: SimulationMode,
    pub max_qubits: usize,
}

impl Default for GasConfig {
    fn default() -> Self {
        GasConfig {
            precision: 6,
            scaling: PhaseScaling::Fit,
            shots: 1024,
            seed: 0,
            max_rounds: 5,
            patience: 2,
            iterations: None,
            initial_samples: 8,
            hcd: HcdKind::Anchored,
            mode: SimulationMode::Compiled,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

/// Best valid tour known so far.
#[derive(Clone, Debug, PartialEq)]
pub struct Incumbent {
    pub word: u64,
    pub tour: Vec<usize>,
    pub cost: f64,
    pub bucket: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdUpdate {
    pub threshold: Option<u64>,
    pub incumbent: Option<Incumbent>,
    pub improved: bool,
    /// Set when there is neither a valid sample nor an incumbent.
    pub warning: bool,
}

/// Costs closer than this (relative) are the same tour summed in a
/// different order.
const COST_TOLERANCE: f64 = 1e-9;

fn cheaper(a: f64, b: f64) -> bool {
    a < b - COST_TOLERANCE * b.abs().max(1.0)
}

/// Moves the incumbent to the cheapest valid sample if it beats the current
/// one; the threshold is the incumbent's bucket, compared strictly.
pub fn threshold_update(incumbent: Option<&Incumbent>, samples: &[Incumbent]) -> ThresholdUpdate {
    let best = samples
        .iter()
        .min_by(|a, b| a.cost.total_cmp(&b.cost).then(a.word.cmp(&b.word)));
    let (next, improved) = match (incumbent, best) {
        (Some(cur), Some(b)) if cheaper(b.cost, cur.cost) => (Some(b.clone()), true),
        (Some(cur), _) => (Some(cur.clone()), false),
        (None, Some(b)) => (Some(b.clone()), true),
        (None, None) => (None, false),
    };
    ThresholdUpdate {
        threshold: next.as_ref().map(|i| i.bucket),
        warning: next.is_none(),
        incumbent: next,
        improved,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoundRecord {
    pub round: usize,
    pub threshold: u64,
    pub iterations: u64,
    pub counts: BTreeMap<u64, u64>,
    pub valid_samples: u64,
    pub best_sample: Option<Incumbent>,
    pub incumbent_cost: Option<f64>,
    pub improved: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentResult {
    pub initial: Option<Incumbent>,
    pub best: Option<Incumbent>,
    pub rounds: Vec<RoundRecord>,
    pub budget: QubitBudget,
    pub simulated_qubits: usize,
    pub step_stats: CircuitStats,
    pub warning: bool,
}

fn decode(inst: &TspInstance, phases: &NormalizedPhases, value: u64) -> Option<Incumbent> {
    let w = inst.word(value);
    let tour = inst.tour(&w)?;
    let cost = inst.cost(&w).ok()?;
    Some(Incumbent { word: value, tour, cost, bucket: phases.bucket(&w) })
}

/// Best of `samples` random valid tours from random restarts.
fn initial_incumbent(inst: &TspInstance, phases: &NormalizedPhases, rng: &mut ChaCha8Rng, samples: usize) -> Option<Incumbent> {
    let n = inst.cities();
    let mut found = Vec::new();
    let mut order: Vec<usize> = (1..n).collect();
    for _ in 0..samples {
        for _attempt in 0..64 {
            order.shuffle(rng);
            let mut tour = alloc::vec![0usize];
            tour.extend_from_slice(&order);
            if let Ok(w) = inst.word_for_tour(&tour) {
                if let Some(i) = decode(inst, phases, inst.value(&w)) {
                    found.push(i);
                }
                break;
            }
        }
    }
    threshold_update(None, &found).incumbent
}

/// Runs the adaptive loop: seed a threshold classically, then alternate
/// amplification rounds and threshold updates.
pub fn run_gqtsp(inst: &TspInstance, config: &GasConfig) -> Result<ExperimentResult> {
    if config.shots == 0 {
        return Err(Error::NoShots);
    }
    let enc = inst.encoding();
    let budget = QubitBudget::new(enc.cities, enc.choice_bits, config.precision)?;
    let phases = normalize_phases_with(inst, config.precision, config.scaling)?;
    let oracle = HcdOracle::new(inst, config.hcd.variant(inst))?;
    let flags = match config.mode {
        SimulationMode::Compiled => Some(oracle.flags()?),
        SimulationMode::GateLevel => None,
    };
    if flags.as_ref().is_some_and(|f| !f.iter().any(|&x| x)) {
        return Err(Error::NoHamiltonianCycle);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let initial = initial_incumbent(inst, &phases, &mut rng, config.initial_samples);
    let mut incumbent = initial.clone();
    let iterations = config.iterations.unwrap_or_else(|| fixed_iterations(enc.search_qubits()));
    let mut rounds = Vec::new();
    let mut stale = 0;
    let mut simulated_qubits = 0;
    let mut step_stats = CircuitStats::default();
    let mut warning = incumbent.is_none();
    for round in 0..config.max_rounds {
        let threshold = incumbent.as_ref().map(|i| i.bucket).unwrap_or(0);
        let clc = ClcConfig::new(phases.clone(), enc, threshold, Direction::Greater)?;
        let program = match &flags {
            Some(f) => GroverProgram::compiled(&clc, f)?,
            None => GroverProgram::gate_level(&clc, &oracle)?,
        };
        simulated_qubits = program.qubits();
        step_stats = program.step().stats();
        let mut run = GroverRun::new(&program, config.max_qubits)?;
        for _ in 0..iterations {
            run.step()?;
        }
        let counts = run.sample(config.shots, rng.next_u64())?;
        let mut valid = Vec::new();
        let mut valid_samples = 0;
        for (&v, &c) in &counts {
            if let Some(i) = decode(inst, &phases, v) {
                valid_samples += c;
                valid.push(i);
            }
        }
        let best_sample = threshold_update(None, &valid).incumbent;
        let update = threshold_update(incumbent.as_ref(), &valid);
        warning |= update.warning;
        incumbent = update.incumbent;
        rounds.push(RoundRecord {
            round,
            threshold,
            iterations,
            counts,
            valid_samples,
            best_sample,
            incumbent_cost: incumbent.as_ref().map(|i| i.cost),
            improved: update.improved,
        });
        if update.improved {
            stale = 0;
        } else {
            stale += 1;
            if stale >= config.patience {
                break;
            }
        }
    }
    if incumbent.is_none() {
        return Err(Error::NoHamiltonianCycle);
    }
    Ok(ExperimentResult {
        initial,
        best: incumbent,
        rounds,
        budget,
        simulated_qubits,
        step_stats,
        warning,
    })
}
