//! Qubit accounting for the full search circuit.
//!
//! The cycle register holds `m·N` qubits. The detection oracle (anchored
//! variant with `k_opt`) needs `n(k+L)` location qubits, `σ₀(N) − 1` check
//! qubits and `m` forwarder scratch qubits. Phase estimation is charged
//! `2t + 1` qubits. The two oracles never hold work qubits at the same time,
//! so they share one zeroed pool sized to the larger of the two. Two result
//! flags and `max(m − 2, 0)` ancillas for the controlled cost operator
//! complete the count.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hcd::AnchorPlan;
use crate::ledger::QubitLedger;
use crate::math::{ceil_log2, sigma0};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitBudget {
    pub cities: usize,
    pub choice_bits: usize,
    pub index_bits: usize,
    pub precision: usize,
    pub plan: AnchorPlan,
    /// `m·N`.
    pub cycle: usize,
    /// `n(k + L)`.
    pub locations: usize,
    /// `σ₀(N) − 1`.
    pub checks: usize,
    /// `m`.
    pub scratch: usize,
    /// Peak detection-oracle work qubits.
    pub hcd_work: usize,
    /// Phase-estimation work qubits, `2t + 1`.
    pub clc_work: usize,
    /// `max(hcd_work, clc_work)`.
    pub shared_pool: usize,
    /// Comparator and detection result qubits.
    pub flags: usize,
    /// Ancillas for the controlled cost operator, `max(m − 2, 0)`.
    pub recursion: usize,
    pub total: usize,
    /// Without sharing or anchoring: `mN + nN + N + (2t+1) + 3`.
    pub unoptimized: usize,
    /// `mN + 2√N·log₂N + σ₀(N)`.
    pub asymptotic: f64,
}

impl QubitBudget {
    pub fn new(cities: usize, choice_bits: usize, precision: usize) -> Result<QubitBudget> {
        if cities < 3 {
            return Err(Error::InvalidArgument("a tour needs at least 3 cities"));
        }
        if choice_bits == 0 || precision == 0 {
            return Err(Error::InvalidArgument("register widths must be positive"));
        }
        let n = ceil_log2(cities).max(1);
        let plan = AnchorPlan::optimal(cities, n);
        let cycle = choice_bits * cities;
        let locations = n * plan.location_registers();
        let checks = sigma0(cities) - 1;
        let scratch = choice_bits;
        let hcd_work = locations + checks + scratch;
        let clc_work = 2 * precision + 1;
        let shared_pool = hcd_work.max(clc_work);
        let flags = 2;
        let recursion = choice_bits.saturating_sub(2);
        let total = cycle + shared_pool + flags + recursion;
        let unoptimized = cycle + n * cities + cities + clc_work + 3;
        let nf = cities as f64;
        let asymptotic = cycle as f64 + 2.0 * libm::sqrt(nf) * libm::log2(nf) + sigma0(cities) as f64;
        Ok(QubitBudget {
            cities,
            choice_bits,
            index_bits: n,
            precision,
            plan,
            cycle,
            locations,
            checks,
            scratch,
            hcd_work,
            clc_work,
            shared_pool,
            flags,
            recursion,
            total,
            unoptimized,
            asymptotic,
        })
    }

    /// `d`-sparse encoding: `m = ⌈log₂ d⌉`.
    pub fn sparse(cities: usize, degree: usize, precision: usize) -> Result<QubitBudget> {
        QubitBudget::new(cities, ceil_log2(degree).max(1), precision)
    }

    /// Dense encoding: `m = ⌈log₂ N⌉`.
    pub fn dense(cities: usize, precision: usize) -> Result<QubitBudget> {
        QubitBudget::new(cities, ceil_log2(cities).max(1), precision)
    }

    /// Named terms that sum to `total`, skipping zero terms other than the
    /// cycle register. When the oracle work dominates the pool it is split
    /// into locations, checks and scratch.
    pub fn breakdown(&self) -> Vec<(&'static str, usize)> {
        let mut out = alloc::vec![("cycle", self.cycle)];
        if self.hcd_work >= self.clc_work {
            out.push(("locations", self.locations));
            out.push(("checks", self.checks));
            out.push(("scratch", self.scratch));
        } else {
            out.push(("pool", self.shared_pool));
        }
        out.push(("flags", self.flags));
        if self.recursion > 0 {
            out.push(("recursion", self.recursion));
        }
        out
    }

    /// Ledger with registers `cycle`, `r_clc`, `r_hcd`, `cu_ancilla` and the
    /// shared pool, allocated as `cycle, pool, r_clc, r_hcd, cu_ancilla`.
    pub fn ledger(&self) -> QubitLedger {
        pool_ledger(self.cycle, self.shared_pool, self.recursion)
    }
}

pub(crate) fn pool_ledger(cycle: usize, pool: usize, recursion: usize) -> QubitLedger {
    let mut l = QubitLedger::new();
    l.allocate("cycle", cycle).expect("fresh name");
    l.allocate_pool(pool);
    l.allocate("r_clc", 1).expect("fresh name");
    l.allocate("r_hcd", 1).expect("fresh name");
    l.allocate("cu_ancilla", recursion).expect("fresh name");
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_and_dense_totals() {
        let sparse: Vec<usize> = (4..=8).map(|n| QubitBudget::sparse(n, 4, 6).unwrap().total).collect();
        assert_eq!(sparse, [23, 25, 31, 31, 35]);
        let dense: Vec<usize> = (4..=8).map(|n| QubitBudget::dense(n, 6).unwrap().total).collect();
        assert_eq!(dense, [23, 31, 39, 40, 45]);
        let raw: Vec<usize> = (4..=8).map(|n| QubitBudget::sparse(n, 4, 6).unwrap().unoptimized).collect();
        assert_eq!(raw, [36, 46, 52, 58, 64]);
    }

    #[test]
    fn six_city_breakdown() {
        let b = QubitBudget::sparse(6, 4, 6).unwrap();
        let terms: Vec<usize> = b.breakdown().iter().map(|t| t.1).collect();
        assert_eq!(terms, [12, 12, 3, 2, 2]);
        assert_eq!(terms.iter().sum::<usize>(), 31);
        assert_eq!((b.plan.k, b.plan.anchors), (1, 3));
    }

    #[test]
    fn ledger_total_matches() {
        for n in 4..=8 {
            let b = QubitBudget::dense(n, 6).unwrap();
            assert_eq!(b.ledger().total(), b.total);
        }
    }
}
