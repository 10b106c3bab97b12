//! Primitive gates understood by the simulator.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::wrap_angle;

/// A primitive gate. Angles are stored reduced to `[0, 2π)`.
///
/// `Mcx` with one control is a CNOT and with none is a plain X. `DiagonalPhase`
/// multiplies basis state `|v⟩` of `qubits` (qubit `qubits[0]` is bit 0 of `v`)
/// by `exp(i·angles[v])`.
#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    X { target: usize },
    H { target: usize },
    Phase { target: usize, angle: f64 },
    ControlledPhase { control: usize, target: usize, angle: f64 },
    Toffoli { controls: [usize; 2], target: usize },
    Mcx { controls: Vec<usize>, target: usize },
    DiagonalPhase { qubits: Vec<usize>, angles: Vec<f64> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GateKind {
    X,
    H,
    Phase,
    ControlledPhase,
    Toffoli,
    Mcx,
    DiagonalPhase,
}

impl GateKind {
    pub const ALL: [GateKind; 7] = [
        GateKind::X,
        GateKind::H,
        GateKind::Phase,
        GateKind::ControlledPhase,
        GateKind::Toffoli,
        GateKind::Mcx,
        GateKind::DiagonalPhase,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::H => "h",
            GateKind::Phase => "p",
            GateKind::ControlledPhase => "cp",
            GateKind::Toffoli => "ccx",
            GateKind::Mcx => "mcx",
            GateKind::DiagonalPhase => "diag",
        }
    }
}

impl Gate {
    pub fn x(target: usize) -> Gate {
        Gate::X { target }
    }

    pub fn h(target: usize) -> Gate {
        Gate::H { target }
    }

    pub fn phase(target: usize, angle: f64) -> Gate {
        Gate::Phase { target, angle: wrap_angle(angle) }
    }

    pub fn cphase(control: usize, target: usize, angle: f64) -> Gate {
        Gate::ControlledPhase { control, target, angle: wrap_angle(angle) }
    }

    pub fn cx(control: usize, target: usize) -> Gate {
        Gate::Mcx { controls: alloc::vec![control], target }
    }

    pub fn toffoli(a: usize, b: usize, target: usize) -> Gate {
        Gate::Toffoli { controls: [a, b], target }
    }

    pub fn mcx(controls: &[usize], target: usize) -> Gate {
        match *controls {
            [a, b] => Gate::toffoli(a, b, target),
            _ => Gate::Mcx { controls: controls.to_vec(), target },
        }
    }

    /// Diagonal phase over `qubits`; `angles` must have `2^qubits.len()` entries.
    pub fn diagonal(qubits: &[usize], angles: &[f64]) -> Result<Gate> {
        let expected = 1usize
            .checked_shl(qubits.len() as u32)
            .ok_or(Error::InvalidArgument("diagonal gate is too wide"))?;
        if angles.len() != expected {
            return Err(Error::PhaseTableSize { expected, found: angles.len() });
        }
        Ok(Gate::DiagonalPhase {
            qubits: qubits.to_vec(),
            angles: angles.iter().map(|&a| wrap_angle(a)).collect(),
        })
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::X { .. } => GateKind::X,
            Gate::H { .. } => GateKind::H,
            Gate::Phase { .. } => GateKind::Phase,
            Gate::ControlledPhase { .. } => GateKind::ControlledPhase,
            Gate::Toffoli { .. } => GateKind::Toffoli,
            Gate::Mcx { .. } => GateKind::Mcx,
            Gate::DiagonalPhase { .. } => GateKind::DiagonalPhase,
        }
    }

    /// All qubits the gate touches; for X-type gates the target is last.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::X { target } | Gate::H { target } | Gate::Phase { target, .. } => {
                alloc::vec![*target]
            }
            Gate::ControlledPhase { control, target, .. } => alloc::vec![*control, *target],
            Gate::Toffoli { controls, target } => alloc::vec![controls[0], controls[1], *target],
            Gate::Mcx { controls, target } => {
                let mut q = controls.clone();
                q.push(*target);
                q
            }
            Gate::DiagonalPhase { qubits, .. } => qubits.clone(),
        }
    }

    /// Largest qubit index used, if any.
    pub fn max_qubit(&self) -> Option<usize> {
        self.qubits().into_iter().max()
    }

    /// Checks that every qubit is below `qubits` and none repeats.
    pub fn validate(&self, qubits: usize) -> Result<()> {
        let used = self.qubits();
        for (i, &q) in used.iter().enumerate() {
            if q >= qubits {
                return Err(Error::QubitOutOfRange { qubit: q, qubits });
            }
            if used[..i].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        Ok(())
    }

    /// True for gates that permute basis states without phases.
    pub fn is_classical(&self) -> bool {
        matches!(self, Gate::X { .. } | Gate::Toffoli { .. } | Gate::Mcx { .. })
    }

    /// True when the gate is diagonal in the computational basis.
    pub fn is_diagonal(&self) -> bool {
        matches!(
            self,
            Gate::Phase { .. } | Gate::ControlledPhase { .. } | Gate::DiagonalPhase { .. }
        )
    }

    /// Number of controls of an X-type gate.
    pub fn control_count(&self) -> usize {
        match self {
            Gate::X { .. } => 0,
            Gate::Toffoli { .. } => 2,
            Gate::Mcx { controls, .. } => controls.len(),
            _ => 0,
        }
    }

    /// Toffoli-equivalent cost: a CNOT or X is free, a Toffoli costs one and a
    /// primitive `C^kNOT` with `k ≥ 3` is charged `4(k−2)`, the size of its
    /// borrowed-ancilla decomposition.
    pub fn toffoli_cost(&self) -> usize {
        if !self.is_classical() {
            return 0;
        }
        match self.control_count() {
            0 | 1 => 0,
            2 => 1,
            k => 4 * (k - 2),
        }
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::Phase { target, angle } => Gate::phase(*target, -angle),
            Gate::ControlledPhase { control, target, angle } => {
                Gate::cphase(*control, *target, -angle)
            }
            Gate::DiagonalPhase { qubits, angles } => Gate::DiagonalPhase {
                qubits: qubits.clone(),
                angles: angles.iter().map(|&a| wrap_angle(-a)).collect(),
            },
            other => other.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mcx_with_two_controls_is_a_toffoli() {
        assert_eq!(Gate::mcx(&[1, 2], 0).kind(), GateKind::Toffoli);
        assert_eq!(Gate::mcx(&[1], 0).kind(), GateKind::Mcx);
    }

    #[test]
    fn validate_rejects_repeats_and_range() {
        assert_eq!(Gate::toffoli(0, 0, 1).validate(3), Err(Error::DuplicateQubit(0)));
        assert_eq!(
            Gate::cx(0, 3).validate(3),
            Err(Error::QubitOutOfRange { qubit: 3, qubits: 3 })
        );
        assert!(Gate::mcx(&[0, 1, 2], 3).validate(4).is_ok());
    }

    #[test]
    fn inverse_negates_angles() {
        let g = Gate::phase(0, 1.0);
        match g.inverse() {
            Gate::Phase { angle, .. } => {
                assert!((wrap_angle(angle + 1.0)).abs() < 1e-12)
            }
            _ => unreachable!(),
        }
        assert_eq!(Gate::x(2).inverse(), Gate::x(2));
    }

    #[test]
    fn diagonal_size_checked() {
        assert!(Gate::diagonal(&[0, 1], &[0.0; 3]).is_err());
        assert!(Gate::diagonal(&[0, 1], &[0.0; 4]).is_ok());
    }

    #[test]
    fn toffoli_costs() {
        assert_eq!(Gate::cx(0, 1).toffoli_cost(), 0);
        assert_eq!(Gate::toffoli(0, 1, 2).toffoli_cost(), 1);
        assert_eq!(Gate::mcx(&[0, 1, 2, 3], 4).toffoli_cost(), 8);
        assert_eq!(Gate::h(0).toffoli_cost(), 0);
    }
}
