use crate::circuit::Circuit;
use crate::error::Result;
use crate::gate::Gate;
use crate::ledger::check_disjoint;

/// `result ^= OR(inputs)` by De Morgan: X on the inputs, a multi-controlled
/// NOT, X back, then X on the result. An empty input list is a no-op.
pub fn or_gate(circ: &mut Circuit, inputs: &[usize], result: usize) -> Result<()> {
    check_disjoint(&[inputs, &[result]])?;
    if inputs.is_empty() {
        return Ok(());
    }
    for &q in inputs {
        circ.push(Gate::x(q))?;
    }
    circ.push(Gate::mcx(inputs, result))?;
    for &q in inputs {
        circ.push(Gate::x(q))?;
    }
    circ.push(Gate::x(result))
}

/// `result ^= NOR(inputs)`.
pub fn nor_gate(circ: &mut Circuit, inputs: &[usize], result: usize) -> Result<()> {
    check_disjoint(&[inputs, &[result]])?;
    for &q in inputs {
        circ.push(Gate::x(q))?;
    }
    circ.push(Gate::mcx(inputs, result))?;
    for &q in inputs {
        circ.push(Gate::x(q))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::{propagate, BitState};

    #[test]
    fn or_and_nor_truth_tables() {
        for n in 1..=4usize {
            let inputs: alloc::vec::Vec<usize> = (0..n).collect();
            let mut or = Circuit::with_qubits("or", n + 1);
            or_gate(&mut or, &inputs, n).unwrap();
            let mut nor = Circuit::with_qubits("nor", n + 1);
            nor_gate(&mut nor, &inputs, n).unwrap();
            for x in 0..1u64 << n {
                for r in 0..2u64 {
                    let mut s = BitState::new(n + 1);
                    s.load(&inputs, x);
                    s.set(n, r == 1);
                    propagate(or.gates(), &mut s).unwrap();
                    assert_eq!(s.read(&inputs), x);
                    assert_eq!(s.get(n), (r == 1) ^ (x != 0));
                    let mut s = BitState::new(n + 1);
                    s.load(&inputs, x);
                    s.set(n, r == 1);
                    propagate(nor.gates(), &mut s).unwrap();
                    assert_eq!(s.get(n), (r == 1) ^ (x == 0));
                }
            }
        }
    }
}
