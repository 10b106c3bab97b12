//! Qubit bookkeeping: named registers plus a pool of zeroed ancillas.
//!
//! Qubits are handed out in allocation order, so the total is always the sum
//! of register sizes and the pool size. Pool qubits can be checked out with
//! [`QubitLedger::take_zeroed`] and must be handed back in the zero state.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Register {
    name: String,
    qubits: Vec<usize>,
}

impl Register {
    pub fn new(name: &str, qubits: Vec<usize>) -> Register {
        Register { name: name.to_string(), qubits }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn len(&self) -> usize {
        self.qubits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qubits.is_empty()
    }

    /// Qubit `i` of the register (bit `i` of its value).
    pub fn bit(&self, i: usize) -> usize {
        self.qubits[i]
    }

    pub fn slice(&self, range: Range<usize>) -> &[usize] {
        &self.qubits[range]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QubitLedger {
    registers: Vec<Register>,
    pool: Vec<usize>,
    free: Vec<usize>,
    total: usize,
}

impl QubitLedger {
    pub fn new() -> QubitLedger {
        QubitLedger::default()
    }

    /// Allocates a named register of `size` fresh qubits.
    pub fn allocate(&mut self, name: &str, size: usize) -> Result<Register> {
        if self.registers.iter().any(|r| r.name == name) {
            return Err(Error::DuplicateRegister(name.to_string()));
        }
        let qubits: Vec<usize> = (self.total..self.total + size).collect();
        self.total += size;
        let reg = Register::new(name, qubits);
        self.registers.push(reg.clone());
        Ok(reg)
    }

    /// Adds `size` fresh qubits to the zeroed-ancilla pool.
    pub fn allocate_pool(&mut self, size: usize) -> Vec<usize> {
        let qubits: Vec<usize> = (self.total..self.total + size).collect();
        self.total += size;
        self.pool.extend_from_slice(&qubits);
        // Lowest indices are handed out first.
        self.free.extend(qubits.iter().rev().copied());
        qubits
    }

    pub fn register(&self, name: &str) -> Result<&Register> {
        self.registers
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::UnknownRegister(name.to_string()))
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    /// Every pool qubit, in allocation order.
    pub fn pool(&self) -> &[usize] {
        &self.pool
    }

    pub fn free_count(&self) -> usize {
        self.free.len()
    }

    /// Checks out `count` zeroed pool qubits.
    pub fn take_zeroed(&mut self, count: usize) -> Result<Vec<usize>> {
        if count > self.free.len() {
            return Err(Error::PoolExhausted { requested: count, available: self.free.len() });
        }
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            out.push(self.free.pop().expect("length checked"));
        }
        Ok(out)
    }

    /// Returns qubits to the pool. The caller guarantees they are back in |0⟩.
    pub fn return_zeroed(&mut self, qubits: &[usize]) -> Result<()> {
        for &q in qubits {
            if !self.pool.contains(&q) || self.free.contains(&q) {
                return Err(Error::Unallocated(q));
            }
        }
        self.free.extend(qubits.iter().rev().copied());
        Ok(())
    }

    /// Total number of qubits allocated (registers plus pool).
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn is_allocated(&self, qubit: usize) -> bool {
        qubit < self.total
    }

    /// Name of the register holding `qubit`, or `"pool"`.
    pub fn owner(&self, qubit: usize) -> Option<&str> {
        if let Some(r) = self.registers.iter().find(|r| r.qubits.contains(&qubit)) {
            return Some(&r.name);
        }
        self.pool.contains(&qubit).then_some("pool")
    }
}

/// Errors if any qubit appears twice across `groups`.
pub fn check_disjoint(groups: &[&[usize]]) -> Result<()> {
    let mut seen: Vec<usize> = Vec::new();
    for g in groups {
        for &q in g.iter() {
            if seen.contains(&q) {
                return Err(Error::OverlappingRegisters(q));
            }
            seen.push(q);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals_add_up() {
        let mut l = QubitLedger::new();
        let a = l.allocate("a", 3).unwrap();
        let pool = l.allocate_pool(4);
        let b = l.allocate("b", 2).unwrap();
        assert_eq!(a.qubits(), [0, 1, 2]);
        assert_eq!(pool, [3, 4, 5, 6]);
        assert_eq!(b.qubits(), [7, 8]);
        assert_eq!(l.total(), 9);
        assert_eq!(l.owner(4), Some("pool"));
        assert_eq!(l.owner(8), Some("b"));
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut l = QubitLedger::new();
        l.allocate("a", 1).unwrap();
        assert!(matches!(l.allocate("a", 1), Err(Error::DuplicateRegister(_))));
    }

    #[test]
    fn pool_checkout_and_return() {
        let mut l = QubitLedger::new();
        l.allocate_pool(3);
        let got = l.take_zeroed(2).unwrap();
        assert_eq!(got, [0, 1]);
        assert_eq!(
            l.take_zeroed(2),
            Err(Error::PoolExhausted { requested: 2, available: 1 })
        );
        l.return_zeroed(&got).unwrap();
        assert_eq!(l.free_count(), 3);
        assert!(l.return_zeroed(&[0]).is_err());
    }

    #[test]
    fn disjointness() {
        assert!(check_disjoint(&[&[0, 1], &[2]]).is_ok());
        assert_eq!(check_disjoint(&[&[0, 1], &[1]]), Err(Error::OverlappingRegisters(1)));
    }
}
