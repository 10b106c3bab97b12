//! Quantum-addressed reads: copy either a quantum data register (QAQR) or a
//! classical table entry (QACR) selected by an address register.
//!
//! Both walk every address once. Address `j` is selected by an MCX controlled
//! on all address qubits after X-flipping the qubits where `j` has a zero.
//! Walking the addresses so that consecutive flip masks follow the
//! binary-reflected Gray code makes each step cost one X, and undoing the
//! final mask costs one more: `2^n` X gates in total for `n` address qubits.

use alloc::vec::Vec;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::ledger::check_disjoint;
use crate::math::gray;

/// A classical lookup table with `2^address_width` slots of `output_width`
/// bits. Missing trailing entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalTable {
    address_width: usize,
    output_width: usize,
    entries: Vec<u64>,
}

impl ClassicalTable {
    pub fn new(address_width: usize, output_width: usize, entries: Vec<u64>) -> Result<Self> {
        let slots = 1usize << address_width;
        if entries.len() > slots {
            return Err(Error::TableWidthMismatch { expected: slots, found: entries.len() });
        }
        for &e in &entries {
            if output_width < 64 && e >> output_width != 0 {
                return Err(Error::ValueOutOfRange { value: e, bits: output_width });
            }
        }
        let mut entries = entries;
        entries.resize(slots, 0);
        Ok(ClassicalTable { address_width, output_width, entries })
    }

    pub fn address_width(&self) -> usize {
        self.address_width
    }

    pub fn output_width(&self) -> usize {
        self.output_width
    }

    pub fn get(&self, address: usize) -> u64 {
        self.entries[address]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }
}

/// Addresses in the order they are visited, paired with the X mask active
/// while visiting them. The walk starts from an all-ones address.
pub fn visit_order(address_width: usize) -> Vec<(usize, u64)> {
    let all = (1u64 << address_width) - 1;
    (0..1u64 << address_width)
        .map(|i| {
            let mask = gray(i);
            (((!mask) & all) as usize, mask)
        })
        .collect()
}

fn walk(
    circ: &mut Circuit,
    address: &[usize],
    mut emit: impl FnMut(&mut Circuit, usize) -> Result<()>,
) -> Result<()> {
    let mut current = 0u64;
    for (j, mask) in visit_order(address.len()) {
        let change = current ^ mask;
        for (k, &q) in address.iter().enumerate() {
            if (change >> k) & 1 == 1 {
                circ.push(Gate::x(q))?;
            }
        }
        current = mask;
        emit(circ, j)?;
    }
    for (k, &q) in address.iter().enumerate() {
        if (current >> k) & 1 == 1 {
            circ.push(Gate::x(q))?;
        }
    }
    Ok(())
}

/// `output ^= data[address]`. Addresses at or beyond `data.len()` read zero.
pub fn qaqr(
    circ: &mut Circuit,
    address: &[usize],
    data: &[&[usize]],
    output: &[usize],
) -> Result<()> {
    if data.len() > 1 << address.len() {
        return Err(Error::TableWidthMismatch { expected: 1 << address.len(), found: data.len() });
    }
    for d in data {
        if d.len() != output.len() {
            return Err(Error::TableWidthMismatch { expected: output.len(), found: d.len() });
        }
    }
    let mut groups: Vec<&[usize]> = alloc::vec![address, output];
    groups.extend_from_slice(data);
    check_disjoint(&groups)?;
    let mut controls: Vec<usize> = address.to_vec();
    controls.push(0);
    let last = controls.len() - 1;
    walk(circ, address, |circ, j| {
        if let Some(d) = data.get(j) {
            for (l, &dq) in d.iter().enumerate() {
                controls[last] = dq;
                circ.push(Gate::mcx(&controls, output[l]))?;
            }
        }
        Ok(())
    })
}

/// `output ^= table[address]`.
pub fn qacr(
    circ: &mut Circuit,
    address: &[usize],
    table: &ClassicalTable,
    output: &[usize],
) -> Result<()> {
    if table.address_width != address.len() {
        return Err(Error::TableWidthMismatch { expected: address.len(), found: table.address_width });
    }
    if table.output_width != output.len() {
        return Err(Error::TableWidthMismatch { expected: output.len(), found: table.output_width });
    }
    check_disjoint(&[address, output])?;
    walk(circ, address, |circ, j| {
        let v = table.entries[j];
        for (l, &oq) in output.iter().enumerate() {
            if (v >> l) & 1 == 1 {
                circ.push(Gate::mcx(address, oq))?;
            }
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::GateKind;
    use crate::trace::{propagate, BitState};

    #[test]
    fn gray_walk_visits_every_address_once() {
        for n in 0..=5 {
            let order = visit_order(n);
            let mut seen: Vec<usize> = order.iter().map(|&(j, _)| j).collect();
            assert_eq!(order[0].0, (1 << n) - 1);
            seen.sort_unstable();
            assert_eq!(seen, (0..1usize << n).collect::<Vec<_>>());
            for w in order.windows(2) {
                assert_eq!((w[0].0 ^ w[1].0).count_ones(), 1);
            }
        }
    }

    #[test]
    fn qaqr_exhaustive_and_x_count() {
        for n in 1..=3usize {
            let m = 2usize;
            let slots = (1usize << n) - usize::from(n == 3); // one absent slot at n = 3
            let addr: Vec<usize> = (0..n).collect();
            let data: Vec<Vec<usize>> = (0..slots).map(|j| (n + j * m..n + (j + 1) * m).collect()).collect();
            let out: Vec<usize> = (n + slots * m..n + slots * m + m).collect();
            let total = out[m - 1] + 1;
            let mut c = Circuit::with_qubits("qaqr", total);
            let refs: Vec<&[usize]> = data.iter().map(|d| d.as_slice()).collect();
            qaqr(&mut c, &addr, &refs, &out).unwrap();
            assert_eq!(c.stats().count(GateKind::X), 1 << n);
            let all: Vec<usize> = (0..n + slots * m).collect();
            for input in 0..1u64 << all.len() {
                let mut s = BitState::new(total);
                s.load(&all, input);
                s.load(&out, 0b01);
                propagate(c.gates(), &mut s).unwrap();
                let j = (input & ((1 << n) - 1)) as usize;
                let expect = if j < slots { s.read(&data[j]) } else { 0 };
                assert_eq!(s.read(&all), input);
                assert_eq!(s.read(&out), expect ^ 0b01);
            }
        }
    }

    #[test]
    fn qacr_exhaustive_up_to_five_address_bits() {
        for n in 1..=5usize {
            let w = 3usize;
            let entries: Vec<u64> = (0..1u64 << n).map(|j| (j * 5 + 3) % 8).collect();
            let table = ClassicalTable::new(n, w, entries.clone()).unwrap();
            let addr: Vec<usize> = (0..n).collect();
            let out: Vec<usize> = (n..n + w).collect();
            let mut c = Circuit::with_qubits("qacr", n + w);
            qacr(&mut c, &addr, &table, &out).unwrap();
            assert_eq!(c.stats().count(GateKind::X), 1 << n);
            for j in 0..1u64 << n {
                let mut s = BitState::new(n + w);
                s.load(&addr, j);
                propagate(c.gates(), &mut s).unwrap();
                assert_eq!(s.read(&addr), j);
                assert_eq!(s.read(&out), entries[j as usize]);
            }
        }
    }

    #[test]
    fn table_shape_errors() {
        assert!(ClassicalTable::new(2, 2, alloc::vec![0; 5]).is_err());
        assert!(ClassicalTable::new(2, 2, alloc::vec![4]).is_err());
        let t = ClassicalTable::new(2, 2, alloc::vec![1]).unwrap();
        let mut c = Circuit::with_qubits("q", 5);
        assert!(qacr(&mut c, &[0, 1, 2], &t, &[3, 4]).is_err());
        assert!(qacr(&mut c, &[0, 1], &t, &[1, 4]).is_err());
    }
}
