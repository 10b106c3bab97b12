use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::ledger::check_disjoint;

/// Grover diffusion `2|s⟩⟨s| − I` over `register`, exactly (including the
/// global sign, which is a real phase in any controlled use).
pub fn diffusion(circ: &mut Circuit, register: &[usize]) -> Result<()> {
    let n = register.len();
    if n == 0 {
        return Err(Error::EmptyQubitList);
    }
    check_disjoint(&[register])?;
    for &q in register {
        circ.push(Gate::h(q))?;
    }
    for &q in register {
        circ.push(Gate::x(q))?;
    }
    // Phase −1 on |1…1⟩.
    match n {
        1 => circ.push(Gate::phase(register[0], core::f64::consts::PI))?,
        2 => circ.push(Gate::cphase(register[0], register[1], core::f64::consts::PI))?,
        _ => {
            let target = register[n - 1];
            circ.push(Gate::h(target))?;
            circ.push(Gate::mcx(&register[..n - 1], target))?;
            circ.push(Gate::h(target))?;
        }
    }
    for &q in register {
        circ.push(Gate::x(q))?;
    }
    for &q in register {
        circ.push(Gate::h(q))?;
    }
    // So far this is I − 2|s⟩⟨s|; a −1 on both basis states of one qubit
    // fixes the sign.
    let q = register[0];
    circ.extend([
        Gate::phase(q, core::f64::consts::PI),
        Gate::x(q),
        Gate::phase(q, core::f64::consts::PI),
        Gate::x(q),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::StateVector;

    #[test]
    fn matches_reflection_about_uniform_state() {
        for n in 1..=5usize {
            let reg: alloc::vec::Vec<usize> = (0..n).collect();
            let mut c = Circuit::with_qubits("d", n);
            diffusion(&mut c, &reg).unwrap();
            let dim = 1usize << n;
            for x in 0..dim {
                let mut sv = StateVector::basis(n, x as u64).unwrap();
                sv.apply_circuit(&c).unwrap();
                for y in 0..dim {
                    let expect = 2.0 / dim as f64 - if x == y { 1.0 } else { 0.0 };
                    let a = sv.amplitude(y);
                    assert!((a.re - expect).abs() < 1e-12 && a.im.abs() < 1e-12, "n={n} x={x} y={y}");
                }
            }
        }
    }
}
