//! Cycle-length comparing oracle.
//!
//! Phase estimation of the diagonal cost operator `U|C⟩ = exp(iφ(C))|C⟩`
//! writes the cycle's phase bucket into the precision register `T`; a
//! constant comparator copies `[T ⋚ threshold]` into `R_CLC`; mirrored phase
//! estimation returns `T` to zero. With exact-fraction phases the result is
//! bit-exact.

use alloc::vec::Vec;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::ledger::check_disjoint;
use crate::synth::{compare_const, controlled_u, iqft, Direction};
use crate::tsp::{Encoding, NormalizedPhases};

/// Threshold and direction of the comparison, with the phases it reads.
#[derive(Clone, Debug, PartialEq)]
pub struct ClcConfig {
    phases: NormalizedPhases,
    encoding: Encoding,
    threshold: u64,
    direction: Direction,
}

impl ClcConfig {
    pub fn new(phases: NormalizedPhases, encoding: Encoding, threshold: u64, direction: Direction) -> Result<ClcConfig> {
        let t = phases.precision();
        if threshold >> t != 0 {
            return Err(Error::ThresholdOutOfRange { threshold, bits: t });
        }
        if phases.cities() != encoding.cities {
            return Err(Error::RegisterSize { expected: encoding.cities, found: phases.cities() });
        }
        Ok(ClcConfig { phases, encoding, threshold, direction })
    }

    pub fn phases(&self) -> &NormalizedPhases {
        &self.phases
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn encoding(&self) -> Encoding {
        self.encoding
    }

    /// Zeroed ancillas needed by the controlled cost operator.
    pub fn ancillas_needed(&self) -> usize {
        self.encoding.choice_bits.saturating_sub(2)
    }
}

/// Qubits used by the oracle.
#[derive(Clone, Copy, Debug)]
pub struct ClcRegisters<'a> {
    pub cycle: &'a [usize],
    pub precision: &'a [usize],
    pub result: usize,
    /// `m − 2` zeroed qubits for the controlled cost operator.
    pub ancillas: &'a [usize],
}

/// Controlled `U^power`: one [`controlled_u`] per city slice.
pub fn build_cost_phase(
    circ: &mut Circuit,
    phases: &NormalizedPhases,
    encoding: Encoding,
    cycle: &[usize],
    control: usize,
    power: u64,
    ancillas: &[usize],
) -> Result<()> {
    let m = encoding.choice_bits;
    if cycle.len() != encoding.search_qubits() {
        return Err(Error::RegisterSize { expected: encoding.search_qubits(), found: cycle.len() });
    }
    for i in 0..encoding.cities {
        let angles = phases.angles(i, power);
        controlled_u(circ, control, &cycle[i * m..(i + 1) * m], &angles, ancillas)?;
    }
    Ok(())
}

/// Phase estimation of the cost operator into `precision` (`precision[0]` is
/// the least significant readout bit).
pub fn build_qpe(
    circ: &mut Circuit,
    phases: &NormalizedPhases,
    encoding: Encoding,
    cycle: &[usize],
    precision: &[usize],
    ancillas: &[usize],
) -> Result<()> {
    if precision.len() != phases.precision() {
        return Err(Error::RegisterSize { expected: phases.precision(), found: precision.len() });
    }
    let needed = encoding.choice_bits.saturating_sub(2);
    if ancillas.len() < needed {
        return Err(Error::InsufficientAncillas { needed, available: ancillas.len() });
    }
    check_disjoint(&[cycle, precision, &ancillas[..needed]])?;
    for &q in precision {
        circ.push(Gate::h(q))?;
    }
    for (j, &q) in precision.iter().enumerate() {
        build_cost_phase(circ, phases, encoding, cycle, q, 1u64 << j, ancillas)?;
    }
    iqft(circ, precision)
}

/// QPE → compare → QPE⁻¹, leaving the comparison bit in `regs.result`.
pub fn build_clc(circ: &mut Circuit, config: &ClcConfig, regs: ClcRegisters<'_>) -> Result<()> {
    check_disjoint(&[regs.cycle, regs.precision, &[regs.result]])?;
    let mark = circ.mark();
    build_qpe(circ, &config.phases, config.encoding, regs.cycle, regs.precision, regs.ancillas)?;
    let qpe_end = circ.mark();
    compare_const(circ, regs.precision, config.threshold, regs.result, config.direction)?;
    circ.mirror_range(mark..qpe_end)
}

/// Classical flag the oracle computes for an exact-fraction instance.
pub fn classical_flag(config: &ClcConfig, bucket: u64) -> bool {
    config.direction.holds(bucket, config.threshold)
}

/// Register layout for standalone use: cycle, precision, result, ancillas.
pub fn standalone_circuit(config: &ClcConfig) -> Result<(Circuit, Vec<usize>, Vec<usize>, usize)> {
    let mut ledger = crate::ledger::QubitLedger::new();
    let cycle = ledger.allocate("cycle", config.encoding.search_qubits())?;
    let precision = ledger.allocate("precision", config.phases.precision())?;
    let result = ledger.allocate("r_clc", 1)?;
    let anc = ledger.allocate("cu_ancilla", config.ancillas_needed())?;
    let mut circ = Circuit::new("clc", ledger);
    build_clc(
        &mut circ,
        config,
        ClcRegisters {
            cycle: cycle.qubits(),
            precision: precision.qubits(),
            result: result.bit(0),
            ancillas: anc.qubits(),
        },
    )?;
    Ok((circ, cycle.qubits().to_vec(), precision.qubits().to_vec(), result.bit(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::StateVector;
    use crate::tsp::{normalize_phases_with, PhaseScaling, TspGraph, TspInstance};
    use core::f64::consts::TAU;

    fn exact_instance() -> (TspInstance, NormalizedPhases) {
        let costs = [(0, 1, 3.0), (0, 2, 5.0), (0, 3, 4.0), (1, 2, 2.0), (1, 3, 6.0), (2, 3, 1.0)];
        let inst = TspInstance::new(TspGraph::from_edges(4, &costs).unwrap()).unwrap();
        let p = normalize_phases_with(&inst, 6, PhaseScaling::BucketsPerUnit(1)).unwrap();
        (inst, p)
    }

    #[test]
    fn qpe_single_qubit_phase_readout() {
        // A one-city toy: U = diag(1, e^{2πi·0.3}) on a one-qubit "cycle".
        // Readout 5 (of 16) must appear with probability at least 4/π².
        let mut ledger = crate::ledger::QubitLedger::new();
        let c = ledger.allocate("c", 1).unwrap();
        let t = ledger.allocate("t", 4).unwrap();
        let mut circ = Circuit::new("qpe", ledger);
        circ.push(Gate::x(c.bit(0))).unwrap();
        for &q in t.qubits() {
            circ.push(Gate::h(q)).unwrap();
        }
        for (j, &q) in t.qubits().iter().enumerate() {
            let angle = TAU * 0.3 * (1u64 << j) as f64;
            controlled_u(&mut circ, q, c.qubits(), &[0.0, angle], &[]).unwrap();
        }
        iqft(&mut circ, t.qubits()).unwrap();
        let mut sv = StateVector::new(5).unwrap();
        sv.apply_circuit(&circ).unwrap();
        let p = sv.basis_probability(t.qubits(), 5).unwrap();
        assert!(p >= 4.0 / (core::f64::consts::PI * core::f64::consts::PI), "p = {p}");
    }

    #[test]
    fn qpe_reads_exact_buckets() {
        let (inst, p) = exact_instance();
        let enc = inst.encoding();
        let mut ledger = crate::ledger::QubitLedger::new();
        let c = ledger.allocate("c", enc.search_qubits()).unwrap();
        let t = ledger.allocate("t", 6).unwrap();
        let mut circ = Circuit::new("qpe", ledger);
        build_qpe(&mut circ, &p, enc, c.qubits(), t.qubits(), &[]).unwrap();
        for v in [0u64, 0b00_11_01_10, 0b11_11_11_11, 0b10_00_01_01] {
            let mut sv = StateVector::basis(14, v).unwrap();
            sv.apply_circuit(&circ).unwrap();
            let b = p.bucket(&inst.word(v));
            let prob = sv.basis_probability(t.qubits(), b).unwrap();
            assert!(prob > 1.0 - 1e-9, "word {v:b}: bucket {b} prob {prob}");
        }
    }

    #[test]
    fn threshold_bounds() {
        let (inst, p) = exact_instance();
        assert!(ClcConfig::new(p.clone(), inst.encoding(), 64, Direction::Greater).is_err());
        assert!(ClcConfig::new(p, inst.encoding(), 63, Direction::Greater).is_ok());
    }
}
