//! Boolean propagation through classical (X / CNOT / Toffoli / MCX) circuits.
//!
//! A permutation circuit maps basis states to basis states, so its action on
//! one input is a single bit vector pass. This is how circuits far too wide
//! for a statevector are checked word by word.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gate::Gate;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitState {
    words: Vec<u64>,
    len: usize,
}

impl BitState {
    pub fn new(len: usize) -> BitState {
        BitState { words: alloc::vec![0; len.div_ceil(64)], len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, q: usize) -> bool {
        (self.words[q / 64] >> (q % 64)) & 1 == 1
    }

    pub fn set(&mut self, q: usize, v: bool) {
        let w = &mut self.words[q / 64];
        if v {
            *w |= 1 << (q % 64);
        } else {
            *w &= !(1 << (q % 64));
        }
    }

    pub fn flip(&mut self, q: usize) {
        self.words[q / 64] ^= 1 << (q % 64);
    }

    /// Writes `value` into `qubits` (`qubits[0]` gets bit 0).
    pub fn load(&mut self, qubits: &[usize], value: u64) {
        for (k, &q) in qubits.iter().enumerate() {
            self.set(q, (value >> k) & 1 == 1);
        }
    }

    /// Reads the value held by `qubits`.
    pub fn read(&self, qubits: &[usize]) -> u64 {
        qubits
            .iter()
            .enumerate()
            .fold(0, |v, (k, &q)| v | ((self.get(q) as u64) << k))
    }

    /// True if every listed qubit is zero.
    pub fn all_zero(&self, qubits: &[usize]) -> bool {
        qubits.iter().all(|&q| !self.get(q))
    }
}

/// Applies the classical gates of `gates` to `state`. Any gate that is not a
/// basis permutation is an error.
pub fn propagate(gates: &[Gate], state: &mut BitState) -> Result<()> {
    for (index, g) in gates.iter().enumerate() {
        match g {
            Gate::X { target } => state.flip(*target),
            Gate::Toffoli { controls, target } => {
                if state.get(controls[0]) && state.get(controls[1]) {
                    state.flip(*target);
                }
            }
            Gate::Mcx { controls, target } => {
                if controls.iter().all(|&c| state.get(c)) {
                    state.flip(*target);
                }
            }
            _ => return Err(Error::NonClassicalGate { index }),
        }
    }
    Ok(())
}
