//! Phase-kick building blocks: the controlled diagonal operator used by the
//! cost oracle, and the quantum Fourier transform.

use core::f64::consts::TAU;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::ledger::check_disjoint;

/// Doubly controlled phase `exp(iφ)` on `|111⟩` of `(a, b, c)`, from three
/// controlled phases and two CNOTs.
pub fn ccphase(circ: &mut Circuit, a: usize, b: usize, c: usize, phi: f64) -> Result<()> {
    circ.extend([
        Gate::cphase(b, c, phi / 2.0),
        Gate::cx(a, b),
        Gate::cphase(b, c, -phi / 2.0),
        Gate::cx(a, b),
        Gate::cphase(a, c, phi / 2.0),
    ])
}

/// Applies `exp(i·angles[v])` to `|1⟩_control |v⟩_register`.
///
/// One- and two-qubit registers are handled directly. Wider registers recurse
/// on the top register qubit with one zeroed ancilla per level, so an
/// `m`-qubit register needs `m − 2` ancillas, all returned to zero.
pub fn controlled_u(
    circ: &mut Circuit,
    control: usize,
    register: &[usize],
    angles: &[f64],
    ancillas: &[usize],
) -> Result<()> {
    let m = register.len();
    let expected = 1usize << m;
    if angles.len() != expected {
        return Err(Error::PhaseTableSize { expected, found: angles.len() });
    }
    let needed = m.saturating_sub(2);
    if ancillas.len() < needed {
        return Err(Error::InsufficientAncillas { needed, available: ancillas.len() });
    }
    check_disjoint(&[&[control], register, &ancillas[..needed]])?;
    emit_controlled_u(circ, control, register, angles, &ancillas[..needed])
}

fn emit_controlled_u(
    circ: &mut Circuit,
    control: usize,
    register: &[usize],
    angles: &[f64],
    ancillas: &[usize],
) -> Result<()> {
    match register.len() {
        0 => circ.push(Gate::phase(control, angles[0])),
        1 => circ.extend([
            Gate::phase(control, angles[0]),
            Gate::cphase(control, register[0], angles[1] - angles[0]),
        ]),
        2 => {
            let (c0, c1) = (register[0], register[1]);
            circ.extend([
                Gate::phase(control, angles[0]),
                Gate::cphase(control, c0, angles[1] - angles[0]),
                Gate::cphase(control, c1, angles[2] - angles[0]),
            ])?;
            let phi = angles[3] - angles[2] - angles[1] + angles[0];
            ccphase(circ, c0, c1, control, phi)
        }
        m => {
            let a = ancillas[0];
            let top = register[m - 1];
            let lower = &register[..m - 1];
            let half = angles.len() / 2;
            circ.push(Gate::toffoli(control, top, a))?;
            emit_controlled_u(circ, a, lower, &angles[half..], &ancillas[1..])?;
            circ.push(Gate::cx(control, a))?;
            emit_controlled_u(circ, a, lower, &angles[..half], &ancillas[1..])?;
            circ.push(Gate::toffoli(control, top, a))?;
            circ.push(Gate::cx(control, a))
        }
    }
}

/// Swap from three CNOTs.
pub fn swap(circ: &mut Circuit, a: usize, b: usize) -> Result<()> {
    circ.extend([Gate::cx(a, b), Gate::cx(b, a), Gate::cx(a, b)])
}

/// `|x⟩ ↦ 2^{−t/2} Σ_y exp(2πi·xy/2^t) |y⟩` with `register[0]` the least
/// significant bit.
pub fn qft(circ: &mut Circuit, register: &[usize]) -> Result<()> {
    check_disjoint(&[register])?;
    let t = register.len();
    for j in (0..t).rev() {
        circ.push(Gate::h(register[j]))?;
        for l in (0..j).rev() {
            let angle = TAU / (1u64 << (j - l + 1)) as f64;
            circ.push(Gate::cphase(register[l], register[j], angle))?;
        }
    }
    for k in 0..t / 2 {
        swap(circ, register[k], register[t - 1 - k])?;
    }
    Ok(())
}

/// Inverse of [`qft`], emitted as its mirror.
pub fn iqft(circ: &mut Circuit, register: &[usize]) -> Result<()> {
    let mut forward = Circuit::new("qft", circ.ledger().clone());
    qft(&mut forward, register)?;
    circ.extend(forward.inverse().gates().iter().cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::StateVector;
    use alloc::vec::Vec;
    use num_complex::Complex64;

    #[test]
    fn controlled_u_matches_diagonal_oracle() {
        for m in 0..=4usize {
            let anc = m.saturating_sub(2);
            let total = 1 + m + anc;
            let angles: Vec<f64> = (0..1 << m).map(|v| 0.37 * v as f64 + 0.11 * (v * v) as f64).collect();
            let reg: Vec<usize> = (1..=m).collect();
            let ancillas: Vec<usize> = (m + 1..total).collect();
            let mut c = Circuit::with_qubits("cu", total);
            controlled_u(&mut c, 0, &reg, &angles, &ancillas).unwrap();
            for ctrl in 0..2u64 {
                for v in 0..1u64 << m {
                    let idx = ctrl | (v << 1);
                    let mut sv = StateVector::basis(total, idx).unwrap();
                    sv.apply_circuit(&c).unwrap();
                    let amp = sv.amplitude(idx as usize);
                    let phase = if ctrl == 1 { angles[v as usize] } else { 0.0 };
                    let expect = Complex64::new(libm::cos(phase), libm::sin(phase));
                    assert!((amp - expect).norm() < 1e-12, "m={m} ctrl={ctrl} v={v}");
                }
            }
        }
    }

    #[test]
    fn controlled_u_errors() {
        let mut c = Circuit::with_qubits("cu", 6);
        assert_eq!(
            controlled_u(&mut c, 0, &[1, 2], &[0.0; 3], &[]),
            Err(Error::PhaseTableSize { expected: 4, found: 3 })
        );
        assert_eq!(
            controlled_u(&mut c, 0, &[1, 2, 3, 4], &[0.0; 16], &[5]),
            Err(Error::InsufficientAncillas { needed: 2, available: 1 })
        );
    }

    #[test]
    fn qft_matches_dft_matrix() {
        for t in 1..=5usize {
            let reg: Vec<usize> = (0..t).collect();
            let mut c = Circuit::with_qubits("qft", t);
            qft(&mut c, &reg).unwrap();
            let dim = 1usize << t;
            let norm = 1.0 / libm::sqrt(dim as f64);
            for x in 0..dim {
                let mut sv = StateVector::basis(t, x as u64).unwrap();
                sv.apply_circuit(&c).unwrap();
                for y in 0..dim {
                    let ang = TAU * ((x * y) % dim) as f64 / dim as f64;
                    let expect = Complex64::new(libm::cos(ang), libm::sin(ang)) * norm;
                    assert!((sv.amplitude(y) - expect).norm() < 1e-12, "t={t} x={x} y={y}");
                }
            }
        }
    }

    #[test]
    fn iqft_undoes_qft() {
        let reg = [0usize, 1, 2, 3];
        let mut c = Circuit::with_qubits("q", 4);
        c.push(Gate::h(1)).unwrap();
        qft(&mut c, &reg).unwrap();
        iqft(&mut c, &reg).unwrap();
        c.push(Gate::h(1)).unwrap();
        let mut sv = StateVector::basis(4, 5).unwrap();
        sv.apply_circuit(&c).unwrap();
        assert!((sv.amplitude(5).re - 1.0).abs() < 1e-12);
    }
}
