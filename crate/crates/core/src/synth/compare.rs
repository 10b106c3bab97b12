use alloc::vec::Vec;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::ledger::check_disjoint;

/// Which side of the threshold marks a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Less,
    Greater,
}

impl Direction {
    pub fn holds(self, value: u64, threshold: u64) -> bool {
        match self {
            Direction::Less => value < threshold,
            Direction::Greater => value > threshold,
        }
    }
}

/// `result ^= [x ⋚ threshold]` for the value `x` held by `register`, with no
/// ancillas.
///
/// `x > K` holds exactly when, at the highest bit where `x` and `K` differ,
/// `x` has a one. Each bit `i` where `K` has a zero contributes one
/// multi-controlled NOT conditioned on `x_i = 1` and `x_j = K_j` for `j > i`;
/// at most one of these fires. `x < K` is the mirror image.
pub fn compare_const(
    circ: &mut Circuit,
    register: &[usize],
    threshold: u64,
    result: usize,
    direction: Direction,
) -> Result<()> {
    let t = register.len();
    if t == 0 {
        return Err(Error::EmptyQubitList);
    }
    if t < 64 && threshold >> t != 0 {
        return Err(Error::ThresholdOutOfRange { threshold, bits: t });
    }
    check_disjoint(&[register, &[result]])?;
    let k = |i: usize| (threshold >> i) & 1 == 1;
    let pivot_bit = match direction {
        Direction::Greater => false,
        Direction::Less => true,
    };
    for i in (0..t).rev() {
        if k(i) != pivot_bit {
            continue;
        }
        // Qubits that must read zero for this term get X-sandwiched.
        let mut flipped: Vec<usize> = (i + 1..t).filter(|&j| !k(j)).map(|j| register[j]).collect();
        if direction == Direction::Less {
            flipped.push(register[i]);
        }
        let controls: Vec<usize> = register[i..].to_vec();
        for &q in &flipped {
            circ.push(Gate::x(q))?;
        }
        circ.push(Gate::mcx(&controls, result))?;
        for &q in &flipped {
            circ.push(Gate::x(q))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::{propagate, BitState};

    #[test]
    fn exhaustive_against_integer_comparison() {
        for t in 1..=5usize {
            let reg: Vec<usize> = (0..t).collect();
            for threshold in 0..1u64 << t {
                for dir in [Direction::Less, Direction::Greater] {
                    let mut c = Circuit::with_qubits("cmp", t + 1);
                    compare_const(&mut c, &reg, threshold, t, dir).unwrap();
                    for x in 0..1u64 << t {
                        let mut s = BitState::new(t + 1);
                        s.load(&reg, x);
                        propagate(c.gates(), &mut s).unwrap();
                        assert_eq!(s.read(&reg), x);
                        assert_eq!(s.get(t), dir.holds(x, threshold), "t={t} K={threshold} x={x} {dir:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn threshold_out_of_range() {
        let mut c = Circuit::with_qubits("cmp", 4);
        assert_eq!(
            compare_const(&mut c, &[0, 1, 2], 8, 3, Direction::Greater),
            Err(Error::ThresholdOutOfRange { threshold: 8, bits: 3 })
        );
    }

    #[test]
    fn boundary_thresholds() {
        // x > 2^t − 1 and x < 0 never hold: no gates at all.
        let mut c = Circuit::with_qubits("cmp", 4);
        compare_const(&mut c, &[0, 1, 2], 7, 3, Direction::Greater).unwrap();
        compare_const(&mut c, &[0, 1, 2], 0, 3, Direction::Less).unwrap();
        assert!(c.is_empty());
    }
}
