use alloc::vec::Vec;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::ledger::check_disjoint;

/// `C^nNOT` from Toffolis using `n − 2` borrowed qubits in any state; they
/// are returned unchanged. Emits `4(n − 2)` Toffolis for `n ≥ 3`. Fewer than
/// three controls need no ancilla and emit a single X, CNOT or Toffoli.
pub fn mcx_borrowed(
    circ: &mut Circuit,
    controls: &[usize],
    target: usize,
    borrowed: &[usize],
) -> Result<()> {
    let n = controls.len();
    if n < 3 {
        check_disjoint(&[controls, &[target]])?;
        return circ.push(Gate::mcx(controls, target));
    }
    if borrowed.len() < n - 2 {
        return Err(Error::InsufficientAncillas { needed: n - 2, available: borrowed.len() });
    }
    let b = &borrowed[..n - 2];
    check_disjoint(&[controls, &[target], b])?;
    let q = controls;
    let mut gates = Vec::with_capacity(4 * (n - 2));
    let ladder = |gates: &mut Vec<Gate>| {
        for i in (2..=n - 2).rev() {
            gates.push(Gate::toffoli(q[i], b[i - 2], b[i - 1]));
        }
        gates.push(Gate::toffoli(q[0], q[1], b[0]));
        for i in 2..=n - 2 {
            gates.push(Gate::toffoli(q[i], b[i - 2], b[i - 1]));
        }
    };
    let top = Gate::toffoli(q[n - 1], b[n - 3], target);
    gates.push(top.clone());
    ladder(&mut gates);
    gates.push(top);
    ladder(&mut gates);
    circ.extend(gates)
}

/// `C^nNOT` with a single extra qubit `b`.
///
/// The controls split into `A = controls[..=n/2]` and `B = controls[n/2+1..]`.
/// Four half-size steps, each realised by [`mcx_borrowed`] borrowing from the
/// other half: toggle `b` by AND(A); toggle the target by AND(B)·b; toggle `b`
/// again; toggle the target again. The target flips exactly when AND(A) and
/// AND(B) hold. `b` is returned in its input state. For even `n ≥ 6` the four
/// steps run back to back take `8(n − 3)` Toffolis; at `n = 4` the second
/// half is a single Toffoli and the total is 10.
pub fn mcx_one_zeroed(
    circ: &mut Circuit,
    controls: &[usize],
    target: usize,
    zeroed: &[usize],
) -> Result<()> {
    let n = controls.len();
    if n < 3 {
        return mcx_borrowed(circ, controls, target, &[]);
    }
    let b = *zeroed
        .first()
        .ok_or(Error::InsufficientAncillas { needed: 1, available: 0 })?;
    check_disjoint(&[controls, &[target], &[b]])?;
    let (a_half, b_half) = controls.split_at(n / 2 + 1);
    let mut borrow_for_a: Vec<usize> = b_half.to_vec();
    borrow_for_a.push(target);
    let mut with_b: Vec<usize> = b_half.to_vec();
    with_b.push(b);
    for _ in 0..2 {
        mcx_borrowed(circ, a_half, b, &borrow_for_a)?;
        mcx_borrowed(circ, &with_b, target, a_half)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::{propagate, BitState};

    /// Exhaustive truth-table check: target flips iff all controls are set,
    /// every other qubit keeps its value.
    fn check_exhaustive(n: usize, extra: usize, build: impl Fn(&mut Circuit, &[usize], usize, &[usize]) -> Result<()>) {
        let total = n + 1 + extra;
        let controls: Vec<usize> = (0..n).collect();
        let target = n;
        let anc: Vec<usize> = (n + 1..total).collect();
        let mut circ = Circuit::with_qubits("mcx", total);
        build(&mut circ, &controls, target, &anc).unwrap();
        let all: Vec<usize> = (0..total).collect();
        for input in 0..1u64 << total {
            let mut s = BitState::new(total);
            s.load(&all, input);
            propagate(circ.gates(), &mut s).unwrap();
            let fire = input & ((1 << n) - 1) == (1 << n) - 1;
            let expected = if fire { input ^ (1 << target) } else { input };
            assert_eq!(s.read(&all), expected, "n = {n}, input = {input:b}");
        }
    }

    #[test]
    fn borrowed_truth_tables() {
        for n in 0..=6 {
            check_exhaustive(n, n.saturating_sub(2), mcx_borrowed);
        }
    }

    #[test]
    fn borrowed_toffoli_count() {
        for n in 3..=8 {
            let mut c = Circuit::with_qubits("mcx", 2 * n);
            let q: Vec<usize> = (0..n).collect();
            let a: Vec<usize> = (n + 1..2 * n - 1).collect();
            mcx_borrowed(&mut c, &q, n, &a).unwrap();
            let s = c.stats();
            assert_eq!(s.toffoli_count, 4 * (n - 2));
            assert!(s.toffoli_depth <= 4 * (n - 2));
        }
    }

    #[test]
    fn one_zeroed_truth_tables_even_with_dirty_ancilla() {
        for n in 0..=7 {
            check_exhaustive(n, 1, mcx_one_zeroed);
        }
    }

    #[test]
    fn one_zeroed_toffoli_count_for_even_n() {
        for n in [6usize, 8, 10] {
            let mut c = Circuit::with_qubits("mcx", n + 2);
            let q: Vec<usize> = (0..n).collect();
            mcx_one_zeroed(&mut c, &q, n, &[n + 1]).unwrap();
            let s = c.stats();
            assert_eq!(s.toffoli_count, 8 * (n - 3), "n = {n}");
            assert!(s.toffoli_depth <= s.toffoli_count);
        }
        let mut c = Circuit::with_qubits("mcx", 6);
        mcx_one_zeroed(&mut c, &[0, 1, 2, 3], 4, &[5]).unwrap();
        assert_eq!(c.stats().toffoli_count, 10);
    }

    #[test]
    fn missing_ancillas_are_errors() {
        let mut c = Circuit::with_qubits("mcx", 8);
        assert_eq!(
            mcx_borrowed(&mut c, &[0, 1, 2, 3], 4, &[5]),
            Err(Error::InsufficientAncillas { needed: 2, available: 1 })
        );
        assert_eq!(
            mcx_one_zeroed(&mut c, &[0, 1, 2], 4, &[]),
            Err(Error::InsufficientAncillas { needed: 1, available: 0 })
        );
        assert_eq!(
            mcx_borrowed(&mut c, &[0, 1, 2], 4, &[2]),
            Err(Error::OverlappingRegisters(2))
        );
        assert!(c.is_empty());
    }
}
