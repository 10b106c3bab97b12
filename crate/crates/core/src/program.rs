//! One Grover iteration of the search, assembled from the two oracles.
//!
//! The iteration marks a word when both oracle flags are set: compute the
//! comparator flag `R_CLC` and the detection flag `R_HCD`, apply a phase of
//! −1 when both are one, uncompute both, then diffuse the cycle register.
//! The phase is a controlled-Z between the two flag qubits; a Toffoli onto a
//! result qubit held in |−⟩ has the same effect on the other registers, so
//! that qubit is not simulated.
//!
//! Two layouts are available:
//!
//! * [`SimulationMode::GateLevel`] uses the budgeted ledger: the precision
//!   register and the detection oracle's ancillas share one zeroed pool. This
//!   is exact when phase estimation returns the precision register to zero,
//!   i.e. on exact-fraction phase tables.
//! * [`SimulationMode::Compiled`] keeps the comparator at gate level on its
//!   own precision register and replaces detect / phase / undetect by the
//!   diagonal it implements, `−1` on words with `R_CLC = 1` that the
//!   detection circuit accepts. The accepted set is obtained by Boolean
//!   propagation of every word through the actual detection circuit, which
//!   also checks that its ancillas come back clean. This needs no detection
//!   ancillas in the statevector and is exact for any phase table.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::budget::pool_ledger;
use crate::circuit::Circuit;
use crate::clc::{build_clc, ClcConfig, ClcRegisters};
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::hcd::HcdOracle;
use crate::ledger::QubitLedger;
use crate::synth::diffusion;
use crate::tsp::TspInstance;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SimulationMode {
    #[default]
    Compiled,
    GateLevel,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroverProgram {
    mode: SimulationMode,
    prepare: Circuit,
    step: Circuit,
    cycle: Vec<usize>,
    work: Vec<usize>,
}

impl GroverProgram {
    /// Compiled layout from precomputed detection flags (one per word).
    pub fn compiled(clc: &ClcConfig, flags: &[bool]) -> Result<GroverProgram> {
        let enc = clc.encoding();
        let q = enc.search_qubits();
        if flags.len() != 1 << q {
            return Err(Error::TableWidthMismatch { expected: 1 << q, found: flags.len() });
        }
        let mut ledger = QubitLedger::new();
        let cycle = ledger.allocate("cycle", q)?;
        let precision = ledger.allocate("precision", clc.phases().precision())?;
        let r_clc = ledger.allocate("r_clc", 1)?;
        let anc = ledger.allocate("cu_ancilla", clc.ancillas_needed())?;
        let mut step = Circuit::new("grover_step", ledger.clone());
        let regs = ClcRegisters {
            cycle: cycle.qubits(),
            precision: precision.qubits(),
            result: r_clc.bit(0),
            ancillas: anc.qubits(),
        };
        let start = step.mark();
        build_clc(&mut step, clc, regs)?;
        let end = step.mark();
        let mut kick_qubits = cycle.qubits().to_vec();
        kick_qubits.push(r_clc.bit(0));
        let angles: Vec<f64> = (0..2usize << q)
            .map(|v| if v >> q == 1 && flags[v & ((1 << q) - 1)] { PI } else { 0.0 })
            .collect();
        step.push(Gate::diagonal(&kick_qubits, &angles)?)?;
        step.mirror_range(start..end)?;
        diffusion(&mut step, cycle.qubits())?;
        let mut work = precision.qubits().to_vec();
        work.push(r_clc.bit(0));
        work.extend_from_slice(anc.qubits());
        GroverProgram::finish(SimulationMode::Compiled, ledger, step, cycle.qubits().to_vec(), work)
    }

    /// Gate-level layout with a shared pool sized for the larger oracle.
    pub fn gate_level(clc: &ClcConfig, oracle: &HcdOracle) -> Result<GroverProgram> {
        let enc = clc.encoding();
        let t = clc.phases().precision();
        let hcd_count = oracle.ancilla_count();
        let pool_size = hcd_count.max(2 * t + 1);
        let ledger = pool_ledger(enc.search_qubits(), pool_size, clc.ancillas_needed());
        let cycle = ledger.register("cycle")?.qubits().to_vec();
        let pool = ledger.pool().to_vec();
        let r_clc = ledger.register("r_clc")?.bit(0);
        let r_hcd = ledger.register("r_hcd")?.bit(0);
        let anc = ledger.register("cu_ancilla")?.qubits().to_vec();
        let mut step = Circuit::new("grover_step", ledger.clone());
        let regs = ClcRegisters { cycle: &cycle, precision: &pool[..t], result: r_clc, ancillas: &anc };
        let clc_start = step.mark();
        build_clc(&mut step, clc, regs)?;
        let clc_end = step.mark();
        oracle.build(&mut step, &cycle, r_hcd, &pool[pool_size - hcd_count..])?;
        let hcd_end = step.mark();
        step.push(Gate::cphase(r_clc, r_hcd, PI))?;
        step.mirror_range(clc_end..hcd_end)?;
        step.mirror_range(clc_start..clc_end)?;
        diffusion(&mut step, &cycle)?;
        let mut work = pool;
        work.extend([r_clc, r_hcd]);
        work.extend_from_slice(&anc);
        GroverProgram::finish(SimulationMode::GateLevel, ledger, step, cycle, work)
    }

    /// Builds the detection oracle for `inst` and then the chosen layout.
    pub fn build(inst: &TspInstance, clc: &ClcConfig, oracle: &HcdOracle, mode: SimulationMode) -> Result<GroverProgram> {
        if inst.encoding() != clc.encoding() {
            return Err(Error::InvalidArgument("comparator and instance encodings differ"));
        }
        match mode {
            SimulationMode::Compiled => GroverProgram::compiled(clc, &oracle.flags()?),
            SimulationMode::GateLevel => GroverProgram::gate_level(clc, oracle),
        }
    }

    fn finish(mode: SimulationMode, ledger: QubitLedger, step: Circuit, cycle: Vec<usize>, work: Vec<usize>) -> Result<GroverProgram> {
        let mut prepare = Circuit::new("prepare", ledger);
        for &q in &cycle {
            prepare.push(Gate::h(q))?;
        }
        Ok(GroverProgram { mode, prepare, step, cycle, work })
    }

    pub fn mode(&self) -> SimulationMode {
        self.mode
    }

    pub fn qubits(&self) -> usize {
        self.step.num_qubits()
    }

    /// Uniform superposition over the cycle register.
    pub fn prepare(&self) -> &Circuit {
        &self.prepare
    }

    /// One iteration: mark, unmark ancillas, diffuse.
    pub fn step(&self) -> &Circuit {
        &self.step
    }

    pub fn cycle_qubits(&self) -> &[usize] {
        &self.cycle
    }

    /// Every qubit other than the cycle register.
    pub fn work_qubits(&self) -> &[usize] {
        &self.work
    }
}
