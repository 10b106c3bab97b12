//! Exhaustive checks of the circuit builders, run by `gqtsp verify`.
//!
//! Every suite compares a circuit against a classical reference and lists
//! the basis words (or inputs) that disagree.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use gqtsp_core::circuit::Circuit;
use gqtsp_core::clc::{build_clc, build_qpe, classical_flag, ClcConfig, ClcRegisters};
use gqtsp_core::gate::GateKind;
use gqtsp_core::hcd::{HcdOracle, HcdVariant};
use gqtsp_core::ledger::QubitLedger;
use gqtsp_core::math::ceil_log2;
use gqtsp_core::statevector::{bitstring, StateVector};
use gqtsp_core::synth::{mcx_borrowed, mcx_one_zeroed, qacr, qaqr, ClassicalTable, Direction};
use gqtsp_core::trace::{propagate, BitState};
use gqtsp_core::tsp::{
    normalize_phases_with, random_euclidean_graph, Metric, NormalizedPhases, PhaseScaling, TspGraph, TspInstance,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{CliError, Result};

/// Counterexamples kept per case.
const MAX_FAILURES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Hcd,
    Clc,
    Mcx,
    Qaqr,
}

impl Suite {
    /// Range used when none is given: cities for `hcd`/`clc`, controls for
    /// `mcx`, address bits for `qaqr`.
    pub fn default_range(self) -> RangeInclusive<usize> {
        match self {
            Suite::Hcd => 4..=6,
            Suite::Clc => 4..=4,
            Suite::Mcx => 3..=6,
            Suite::Qaqr => 1..=5,
        }
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "hcd" => Ok(Suite::Hcd),
            "clc" => Ok(Suite::Clc),
            "mcx" => Ok(Suite::Mcx),
            "qaqr" => Ok(Suite::Qaqr),
            _ => Err(CliError::Usage(format!("unknown suite `{s}` (expected hcd, clc, mcx or qaqr)"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Hcd => "hcd",
            Suite::Clc => "clc",
            Suite::Mcx => "mcx",
            Suite::Qaqr => "qaqr",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseReport {
    pub name: String,
    pub checked: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub failures: Vec<String>,
}

impl CaseReport {
    fn new(name: impl Into<String>) -> CaseReport {
        CaseReport { name: name.into(), checked: 0, passed: true, notes: Vec::new(), failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.passed = false;
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn error(&mut self, e: impl fmt::Display) {
        self.passed = false;
        self.failures.push(format!("error: {e}"));
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub range: [usize; 2],
    pub seed: u64,
    pub passed: bool,
    pub cases: Vec<CaseReport>,
}

pub fn verify(suite: Suite, range: RangeInclusive<usize>, seed: u64) -> Result<VerifyReport> {
    let cases = match suite {
        Suite::Hcd => range.clone().map(|n| hcd_case(n, seed)).collect::<Result<Vec<_>>>()?.concat(),
        Suite::Clc => range.clone().map(|n| clc_case(n, seed)).collect::<Result<Vec<_>>>()?.concat(),
        Suite::Mcx => range.clone().flat_map(mcx_cases).collect(),
        Suite::Qaqr => range.clone().flat_map(|n| qrom_cases(n, seed)).collect(),
    };
    Ok(VerifyReport {
        suite,
        range: [*range.start(), *range.end()],
        seed,
        passed: cases.iter().all(|c| c.passed),
        cases,
    })
}

/// A seeded 4-sparse instance (complete when `N ≤ 5`).
pub fn sparse_instance(cities: usize, seed: u64) -> Result<TspInstance> {
    let degree = 4.min(cities - 1);
    let graph = random_euclidean_graph(cities, degree, seed, Metric::Euclidean)?;
    Ok(TspInstance::new(graph)?)
}

/// Integer costs `1..=8` derived from a seeded geometric instance, with phases
/// quantised one bucket per cost unit so every cycle cost is an exact
/// fraction of a turn at `t` bits.
pub fn exact_instance(cities: usize, seed: u64) -> Result<(TspInstance, NormalizedPhases)> {
    let base = sparse_instance(cities, seed)?;
    let g = base.graph();
    let max = g.max_cost();
    let edges: Vec<(usize, usize, f64)> =
        g.edges().into_iter().map(|(i, j, c)| (i, j, 1.0 + (7.0 * c / max).floor().min(7.0))).collect();
    let inst = TspInstance::new(TspGraph::from_edges(cities, &edges)?)?;
    let t = ceil_log2(7 * cities + 1).max(6);
    let phases = normalize_phases_with(&inst, t, PhaseScaling::BucketsPerUnit(1))?;
    Ok((inst, phases))
}

fn hcd_case(cities: usize, seed: u64) -> Result<Vec<CaseReport>> {
    let inst = sparse_instance(cities, seed)?;
    let enc = inst.encoding();
    let q = enc.search_qubits();
    let mut theorems = CaseReport::new(format!("theorems N={cities}"));
    let truth: Vec<bool> = (0..1u64 << q)
        .map(|v| {
            let w = inst.word(v);
            let t1 = inst.is_hamiltonian_theorem1(&w);
            let t2 = inst.is_hamiltonian_theorem2(&w);
            let cyc = inst.is_single_cycle(&w);
            theorems.check(t1 == t2 && t2 == cyc, || format!("{} t1={t1} t2={t2} cycle={cyc}", bitstring(v, q)));
            t1
        })
        .collect();
    let mut cases = vec![theorems];
    for variant in [HcdVariant::Naive, HcdVariant::Improved, HcdVariant::anchored(enc)] {
        let mut case = CaseReport::new(format!("{} N={cities}", variant_name(variant)));
        let oracle = HcdOracle::new(&inst, variant)?;
        case.notes.push(format!("ancillas={}", oracle.ancilla_count()));
        match oracle.flags() {
            Ok(flags) => {
                for (v, (&got, &want)) in flags.iter().zip(&truth).enumerate() {
                    case.check(got == want, || format!("{} circuit={got} theorem={want}", bitstring(v as u64, q)));
                }
            }
            Err(e) => case.error(e),
        }
        cases.push(case);
    }
    Ok(cases)
}

pub fn variant_name(v: HcdVariant) -> &'static str {
    match v {
        HcdVariant::Naive => "naive",
        HcdVariant::Improved => "improved",
        HcdVariant::Anchored(_) => "anchored",
    }
}

/// Joint probabilities of `(cycle, precision, result)` after running
/// `build` on the uniform superposition of cycle words. The cycle register
/// is only ever a control, so branch `w` evolves exactly as basis word `w`
/// would, and `2^q · P(w, …)` is that word's outcome probability.
fn clc_distribution(
    inst: &TspInstance,
    phases: &NormalizedPhases,
    build: impl FnOnce(&mut Circuit, ClcRegisters<'_>) -> gqtsp_core::Result<()>,
) -> Result<(Vec<f64>, usize)> {
    let enc = inst.encoding();
    let q = enc.search_qubits();
    let t = phases.precision();
    let mut ledger = QubitLedger::new();
    let cycle = ledger.allocate("cycle", q)?;
    let precision = ledger.allocate("precision", t)?;
    let result = ledger.allocate("r_clc", 1)?;
    let anc = ledger.allocate("cu_ancilla", enc.choice_bits.saturating_sub(2))?;
    let mut circ = Circuit::new("clc", ledger);
    for &c in cycle.qubits() {
        circ.push(gqtsp_core::Gate::h(c))?;
    }
    build(
        &mut circ,
        ClcRegisters { cycle: cycle.qubits(), precision: precision.qubits(), result: result.bit(0), ancillas: anc.qubits() },
    )?;
    let mut sv = StateVector::new(circ.num_qubits())?;
    sv.apply_circuit(&circ)?;
    let mut joint: Vec<usize> = cycle.qubits().to_vec();
    joint.extend_from_slice(precision.qubits());
    joint.push(result.bit(0));
    joint.extend_from_slice(anc.qubits());
    Ok((sv.marginal(&joint)?, q))
}

/// Tolerance on per-word outcome probability and on leakage.
pub const CLC_TOLERANCE: f64 = 1e-6;

fn clc_case(cities: usize, seed: u64) -> Result<Vec<CaseReport>> {
    let (inst, phases) = exact_instance(cities, seed)?;
    let enc = inst.encoding();
    let t = phases.precision();
    let buckets: Vec<u64> = (0..1u64 << enc.search_qubits()).map(|v| phases.bucket(&inst.word(v))).collect();

    let mut qpe = CaseReport::new(format!("qpe readout N={cities} t={t}"));
    let (dist, q) = clc_distribution(&inst, &phases, |c, r| build_qpe(c, &phases, enc, r.cycle, r.precision, r.ancillas))?;
    let scale = (1u64 << q) as f64;
    for (v, &b) in buckets.iter().enumerate() {
        let p = scale * dist[v | (b as usize) << q];
        qpe.check(p > 1.0 - CLC_TOLERANCE, || format!("{} bucket={b} p={p}", bitstring(v as u64, q)));
    }

    // Threshold at the median bucket of the valid words so both outcomes occur.
    let mut valid: Vec<u64> = (0..1u64 << q)
        .filter(|&v| inst.is_single_cycle(&inst.word(v)))
        .map(|v| buckets[v as usize])
        .collect();
    valid.sort_unstable();
    let threshold = valid.get(valid.len() / 2).copied().unwrap_or(0);
    let config = ClcConfig::new(phases.clone(), enc, threshold, Direction::Greater)?;
    let mut full = CaseReport::new(format!("comparator N={cities} t={t} threshold={threshold}"));
    let (dist, _) = clc_distribution(&inst, &phases, |c, r| build_clc(c, &config, r))?;
    let mut leak = 0.0;
    for (v, &b) in buckets.iter().enumerate() {
        let flag = classical_flag(&config, b);
        let p = scale * dist[v | usize::from(flag) << (q + t)];
        leak += 1.0 - p;
        full.check(p > 1.0 - CLC_TOLERANCE, || format!("{} bucket={b} flag={flag} p={p}", bitstring(v as u64, q)));
    }
    full.notes.push(format!("leakage={:.3e}", (leak / scale).max(0.0)));
    Ok(vec![qpe, full])
}

/// Truth table of a multi-controlled NOT builder over every input of
/// `total` qubits.
fn mcx_truth(
    case: &mut CaseReport,
    n: usize,
    extra: usize,
    build: impl Fn(&mut Circuit, &[usize], usize, &[usize]) -> gqtsp_core::Result<()>,
) -> Option<Circuit> {
    let total = n + 1 + extra;
    let controls: Vec<usize> = (0..n).collect();
    let anc: Vec<usize> = (n + 1..total).collect();
    let mut circ = Circuit::with_qubits("mcx", total);
    if let Err(e) = build(&mut circ, &controls, n, &anc) {
        case.error(e);
        return None;
    }
    let all: Vec<usize> = (0..total).collect();
    let ones = (1u64 << n) - 1;
    for input in 0..1u64 << total {
        let mut s = BitState::new(total);
        s.load(&all, input);
        let got = propagate(circ.gates(), &mut s).map(|_| s.read(&all));
        let want = if input & ones == ones { input ^ (1 << n) } else { input };
        case.check(got.as_ref() == Ok(&want), || format!("input {} -> {got:?}", bitstring(input, total)));
    }
    Some(circ)
}

fn mcx_cases(n: usize) -> Vec<CaseReport> {
    let mut borrowed = CaseReport::new(format!("mcx_borrowed n={n}"));
    if let Some(c) = mcx_truth(&mut borrowed, n, n.saturating_sub(2), mcx_borrowed) {
        borrowed.notes.push(format!("toffolis={}", c.stats().toffoli_count));
    }
    let mut zeroed = CaseReport::new(format!("mcx_one_zeroed n={n}"));
    if let Some(c) = mcx_truth(&mut zeroed, n, 1, mcx_one_zeroed) {
        let s = c.stats();
        zeroed.notes.push(format!("toffolis={} toffoli_depth={}", s.toffoli_count, s.toffoli_depth));
    }
    vec![borrowed, zeroed]
}

/// Data fillings for a quantum-addressed read: all zero, all one, each slot
/// alone, and a few seeded random fillings.
fn fillings(slots: usize, width: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let full = (1u64 << width) - 1;
    let mut out = vec![vec![0; slots], vec![full; slots]];
    for j in 0..slots {
        let mut f = vec![0; slots];
        f[j] = full;
        out.push(f);
    }
    for _ in 0..8 {
        out.push((0..slots).map(|_| rng.gen_range(0..=full)).collect());
    }
    out
}

fn qrom_cases(n: usize, seed: u64) -> Vec<CaseReport> {
    let width = 2usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
    let slots = 1usize << n;
    let addr: Vec<usize> = (0..n).collect();
    let data: Vec<Vec<usize>> = (0..slots).map(|j| (n + j * width..n + (j + 1) * width).collect()).collect();
    let out: Vec<usize> = (n + slots * width..n + (slots + 1) * width).collect();
    let total = n + (slots + 1) * width;

    let mut aq = CaseReport::new(format!("qaqr n={n}"));
    let mut circ = Circuit::with_qubits("qaqr", total);
    let refs: Vec<&[usize]> = data.iter().map(Vec::as_slice).collect();
    match qaqr(&mut circ, &addr, &refs, &out) {
        Ok(()) => {
            let xs = circ.stats().count(GateKind::X);
            aq.notes.push(format!("x_gates={xs}"));
            aq.check(xs <= 1 << n, || format!("{xs} X gates exceed 2^{n}"));
            for fill in fillings(slots, width, &mut rng) {
                for a in 0..slots as u64 {
                    for o in 0..1u64 << width {
                        let mut s = BitState::new(total);
                        s.load(&addr, a);
                        for (d, &v) in data.iter().zip(&fill) {
                            s.load(d, v);
                        }
                        s.load(&out, o);
                        let before = s.clone();
                        let ok = propagate(circ.gates(), &mut s).is_ok()
                            && s.read(&out) == o ^ fill[a as usize]
                            && (0..total).filter(|q| !out.contains(q)).all(|q| s.get(q) == before.get(q));
                        aq.check(ok, || format!("address {} data {fill:?} out {o}", bitstring(a, n)));
                    }
                }
            }
        }
        Err(e) => aq.error(e),
    }

    let mut ac = CaseReport::new(format!("qacr n={n}"));
    let entries: Vec<u64> = (0..slots).map(|_| rng.gen_range(0..1u64 << width)).collect();
    let table = ClassicalTable::new(n, width, entries).expect("entries fit the table");
    let mut circ = Circuit::with_qubits("qacr", n + width);
    let out: Vec<usize> = (n..n + width).collect();
    match qacr(&mut circ, &addr, &table, &out) {
        Ok(()) => {
            let all: Vec<usize> = (0..n + width).collect();
            for input in 0..1u64 << (n + width) {
                let mut s = BitState::new(n + width);
                s.load(&all, input);
                let a = (input & ((1 << n) - 1)) as usize;
                let want = input ^ (table.get(a) << n);
                let got = propagate(circ.gates(), &mut s).map(|_| s.read(&all));
                ac.check(got == Ok(want), || format!("input {} -> {got:?}", bitstring(input, n + width)));
            }
        }
        Err(e) => ac.error(e),
    }
    vec![aq, ac]
}

impl VerifyReport {
    /// One line per case.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.cases {
            let status = if c.passed { "ok" } else { "FAIL" };
            s.push_str(&format!("{status:4} {} ({} checks)", c.name, c.checked));
            for n in &c.notes {
                s.push_str(&format!(" {n}"));
            }
            s.push('\n');
            for f in &c.failures {
                s.push_str(&format!("     {f}\n"));
            }
        }
        s
    }
}
