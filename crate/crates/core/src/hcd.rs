//! Hamiltonian-cycle detection oracle.
//!
//! The oracle walks the successor chain `I_0 = 0, I_1, …, I_N` in location
//! registers using the index forwarder, records "not back at city 0" checks,
//! writes `R_HCD ^= valid(C)`, and mirrors everything else away.
//!
//! * Naive: all `N` locations, a check at every step.
//! * Improved: all `N` locations, checks only at proper divisors of `N`.
//! * Anchored: `k` reusable intermediate registers plus `L = ⌊N/(k+1)⌋`
//!   anchors; intermediate locations are uncomputed block by block.
//!
//! The forwarder uses a scratch register `S`: `S ^= C_{I}` by a
//! quantum-addressed read, `I' ^= table[I, S]` by a classical-addressed read,
//! then `S` is cleared by the mirrored read. A choice that is out of range
//! for its city leaves the walk at that city; such a walk can never return to
//! city 0 at exactly step `N`, so padding choices are rejected.

use alloc::vec::Vec;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::ledger::{check_disjoint, QubitLedger};
use crate::math::proper_divisors;
use crate::synth::{nor_gate, or_gate, qacr, qaqr, ClassicalTable};
use crate::trace::{propagate, BitState};
use crate::tsp::{Encoding, TspInstance};

/// Classical tables driving the forwarder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForwarderSpec {
    encoding: Encoding,
    /// Address `I + (S << n)`, output the next city index.
    step: ClassicalTable,
    /// Address `C_0`, output city 0's successor.
    start: ClassicalTable,
}

impl ForwarderSpec {
    pub fn new(inst: &TspInstance) -> Result<ForwarderSpec> {
        let enc = inst.encoding();
        let (n, m) = (enc.index_bits, enc.choice_bits);
        let lists = inst.lists();
        let mut step = Vec::with_capacity(1 << (n + m));
        for s in 0..1u32 << m {
            for i in 0..1usize << n {
                let next = if i < enc.cities { lists.successor(i, s).unwrap_or(i) } else { i };
                step.push(next as u64);
            }
        }
        let start = (0..1u32 << m)
            .map(|s| lists.successor(0, s).unwrap_or(0) as u64)
            .collect();
        Ok(ForwarderSpec {
            encoding: enc,
            step: ClassicalTable::new(n + m, n, step)?,
            start: ClassicalTable::new(m, n, start)?,
        })
    }

    pub fn encoding(&self) -> Encoding {
        self.encoding
    }

    /// Classical model of one forwarder step.
    pub fn next(&self, current: usize, choice: u32) -> usize {
        let n = self.encoding.index_bits;
        self.step.get(current | ((choice as usize) << n)) as usize
    }
}

/// `output ^= F(current)` where `F` is the next city on the walk. `current`
/// of `None` is the fixed start city 0.
pub fn build_index_forwarder(
    circ: &mut Circuit,
    spec: &ForwarderSpec,
    current: Option<&[usize]>,
    output: &[usize],
    cycle: &[usize],
    scratch: &[usize],
) -> Result<()> {
    let enc = spec.encoding;
    let (n, m) = (enc.index_bits, enc.choice_bits);
    if output.len() != n {
        return Err(Error::RegisterSize { expected: n, found: output.len() });
    }
    if cycle.len() != enc.search_qubits() {
        return Err(Error::RegisterSize { expected: enc.search_qubits(), found: cycle.len() });
    }
    let Some(current) = current else {
        check_disjoint(&[output, cycle])?;
        return qacr(circ, &cycle[..m], &spec.start, output);
    };
    if current.len() != n {
        return Err(Error::RegisterSize { expected: n, found: current.len() });
    }
    if scratch.len() < m {
        return Err(Error::InsufficientAncillas { needed: m, available: scratch.len() });
    }
    let scratch = &scratch[..m];
    check_disjoint(&[current, output, cycle, scratch])?;
    let slices: Vec<&[usize]> = (0..enc.cities).map(|j| &cycle[j * m..(j + 1) * m]).collect();
    let mark = circ.mark();
    qaqr(circ, current, &slices, scratch)?;
    let read_end = circ.mark();
    let mut address: Vec<usize> = current.to_vec();
    address.extend_from_slice(scratch);
    qacr(circ, &address, &spec.step, output)?;
    circ.mirror_range(mark..read_end)
}

/// Optimal number of intermediate registers: the smallest `k` in `1..N`
/// minimising `n(⌊N/(k+1)⌋ + k)`.
pub fn k_opt(cities: usize, index_bits: usize) -> usize {
    (1..cities.max(2))
        .min_by_key(|&k| index_bits * (cities / (k + 1) + k))
        .unwrap_or(1)
}

/// Block structure of the anchored variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnchorPlan {
    pub cities: usize,
    /// Intermediate location registers.
    pub k: usize,
    /// Anchors `L = ⌊N/(k+1)⌋`.
    pub anchors: usize,
}

impl AnchorPlan {
    pub fn new(cities: usize, k: usize) -> Result<AnchorPlan> {
        if k == 0 || k + 1 > cities {
            return Err(Error::InfeasiblePlan { cities, k });
        }
        Ok(AnchorPlan { cities, k, anchors: cities / (k + 1) })
    }

    pub fn optimal(cities: usize, index_bits: usize) -> AnchorPlan {
        AnchorPlan::new(cities, k_opt(cities, index_bits)).expect("k_opt is feasible")
    }

    /// Steps left after the last full block.
    pub fn remainder(&self) -> usize {
        self.cities - self.anchors * (self.k + 1)
    }

    pub fn location_registers(&self) -> usize {
        self.k + self.anchors
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HcdVariant {
    Naive,
    Improved,
    Anchored(AnchorPlan),
}

impl HcdVariant {
    /// Anchored with `k_opt`.
    pub fn anchored(enc: Encoding) -> HcdVariant {
        HcdVariant::Anchored(AnchorPlan::optimal(enc.cities, enc.index_bits))
    }

    pub fn location_registers(&self, cities: usize) -> usize {
        match self {
            HcdVariant::Naive | HcdVariant::Improved => cities,
            HcdVariant::Anchored(p) => p.location_registers(),
        }
    }

    pub fn check_qubits(&self, cities: usize) -> usize {
        match self {
            HcdVariant::Naive => cities,
            _ => proper_divisors(cities).len(),
        }
    }

    /// Zeroed ancillas consumed: locations, checks, forwarder scratch.
    pub fn ancilla_count(&self, enc: Encoding) -> usize {
        self.location_registers(enc.cities) * enc.index_bits + self.check_qubits(enc.cities) + enc.choice_bits
    }
}

/// Where the oracle put its ancillas.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HcdLayout {
    pub locations: Vec<Vec<usize>>,
    pub checks: Vec<usize>,
    pub scratch: Vec<usize>,
}

/// Counts from one oracle build.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HcdReport {
    /// Forwarder applications, compute and uncompute together.
    pub forwarders: usize,
    pub ancillas: usize,
}

/// A detection oracle for one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HcdOracle {
    spec: ForwarderSpec,
    variant: HcdVariant,
}

impl HcdOracle {
    pub fn new(inst: &TspInstance, variant: HcdVariant) -> Result<HcdOracle> {
        if let HcdVariant::Anchored(p) = variant {
            if p.cities != inst.cities() {
                return Err(Error::InfeasiblePlan { cities: inst.cities(), k: p.k });
            }
        }
        Ok(HcdOracle { spec: ForwarderSpec::new(inst)?, variant })
    }

    pub fn variant(&self) -> HcdVariant {
        self.variant
    }

    pub fn spec(&self) -> &ForwarderSpec {
        &self.spec
    }

    pub fn ancilla_count(&self) -> usize {
        self.variant.ancilla_count(self.spec.encoding)
    }

    /// Splits `ancillas` into locations, checks and scratch, in that order.
    pub fn layout(&self, ancillas: &[usize]) -> Result<HcdLayout> {
        let enc = self.spec.encoding;
        let needed = self.ancilla_count();
        if ancillas.len() < needed {
            return Err(Error::InsufficientAncillas { needed, available: ancillas.len() });
        }
        let n = enc.index_bits;
        let regs = self.variant.location_registers(enc.cities);
        let checks = self.variant.check_qubits(enc.cities);
        let locations = (0..regs).map(|r| ancillas[r * n..(r + 1) * n].to_vec()).collect();
        let c0 = regs * n;
        Ok(HcdLayout {
            locations,
            checks: ancillas[c0..c0 + checks].to_vec(),
            scratch: ancillas[c0 + checks..c0 + checks + enc.choice_bits].to_vec(),
        })
    }

    /// Emits `result ^= valid(cycle)` with every ancilla returned to zero.
    pub fn build(&self, circ: &mut Circuit, cycle: &[usize], result: usize, ancillas: &[usize]) -> Result<HcdReport> {
        let layout = self.layout(ancillas)?;
        let used = &ancillas[..self.ancilla_count()];
        check_disjoint(&[cycle, &[result], used])?;
        let mut ctx = Ctx { circ, spec: &self.spec, cycle, layout: &layout, forwarders: 0 };
        match self.variant {
            HcdVariant::Naive => ctx.linear(result, false)?,
            HcdVariant::Improved => ctx.linear(result, true)?,
            HcdVariant::Anchored(plan) => ctx.anchored(plan, result)?,
        }
        Ok(HcdReport { forwarders: ctx.forwarders, ancillas: used.len() })
    }

    /// The oracle on its own ledger: `cycle`, `r_hcd`, `ancilla`.
    pub fn standalone(&self) -> Result<(Circuit, HcdReport)> {
        let enc = self.spec.encoding;
        let mut ledger = QubitLedger::new();
        let cycle = ledger.allocate("cycle", enc.search_qubits())?;
        let result = ledger.allocate("r_hcd", 1)?;
        let anc = ledger.allocate("ancilla", self.ancilla_count())?;
        let mut circ = Circuit::new("hcd", ledger);
        let report = self.build(&mut circ, cycle.qubits(), result.bit(0), anc.qubits())?;
        Ok((circ, report))
    }

    /// Result bit for every cycle word, by Boolean propagation through the
    /// standalone circuit. Errors if any word leaves an ancilla dirty or
    /// changes the cycle register.
    pub fn flags(&self) -> Result<Vec<bool>> {
        let (circ, _) = self.standalone()?;
        evaluate_flags(&circ, self.spec.encoding.search_qubits())
    }
}

/// Runs a standalone oracle circuit (`cycle`, `r_hcd`, `ancilla` ledger) on
/// every word.
pub fn evaluate_flags(circ: &Circuit, search_qubits: usize) -> Result<Vec<bool>> {
    let cycle = circ.ledger().register("cycle")?.qubits().to_vec();
    let result = circ.ledger().register("r_hcd")?.bit(0);
    let anc = circ.ledger().register("ancilla")?.qubits().to_vec();
    let mut out = Vec::with_capacity(1 << search_qubits);
    for word in 0..1u64 << search_qubits {
        let mut s = BitState::new(circ.num_qubits());
        s.load(&cycle, word);
        propagate(circ.gates(), &mut s)?;
        if s.read(&cycle) != word || !s.all_zero(&anc) {
            return Err(Error::AncillaNotRestored { word });
        }
        out.push(s.get(result));
    }
    Ok(out)
}

struct Ctx<'a, 'c> {
    circ: &'c mut Circuit,
    spec: &'a ForwarderSpec,
    cycle: &'a [usize],
    layout: &'a HcdLayout,
    forwarders: usize,
}

impl Ctx<'_, '_> {
    fn forward(&mut self, src: Option<&[usize]>, dst: &[usize]) -> Result<core::ops::Range<usize>> {
        let start = self.circ.mark();
        build_index_forwarder(self.circ, self.spec, src, dst, self.cycle, &self.layout.scratch)?;
        self.forwarders += 1;
        Ok(start..self.circ.mark())
    }

    fn mirror(&mut self, range: core::ops::Range<usize>, forwarders: usize) -> Result<()> {
        self.forwarders += forwarders;
        self.circ.mirror_range(range)
    }

    /// `result ^= AND(checks) ∧ (final == 0)`.
    fn write_result(&mut self, checks: &[usize], final_reg: &[usize], result: usize) -> Result<()> {
        let mut controls = checks.to_vec();
        controls.extend_from_slice(final_reg);
        for &q in final_reg {
            self.circ.push(Gate::x(q))?;
        }
        self.circ.push(Gate::mcx(&controls, result))?;
        for &q in final_reg {
            self.circ.push(Gate::x(q))?;
        }
        Ok(())
    }

    fn linear(&mut self, result: usize, divisors_only: bool) -> Result<()> {
        let n = self.spec.encoding.cities;
        let locs = self.layout.locations.clone();
        let checks = self.layout.checks.clone();
        let start = self.circ.mark();
        for p in 1..=n {
            let src = (p > 1).then(|| locs[p - 2].as_slice());
            self.forward(src, &locs[p - 1])?;
        }
        if divisors_only {
            for (c, &p) in proper_divisors(n).iter().enumerate() {
                or_gate(self.circ, &locs[p - 1], checks[c])?;
            }
            let end = self.circ.mark();
            self.write_result(&checks, &locs[n - 1], result)?;
            self.mirror(start..end, n)
        } else {
            for p in 1..n {
                or_gate(self.circ, &locs[p - 1], checks[p - 1])?;
            }
            nor_gate(self.circ, &locs[n - 1], checks[n - 1])?;
            let end = self.circ.mark();
            self.circ.push(Gate::mcx(&checks, result))?;
            self.mirror(start..end, n)
        }
    }

    fn anchored(&mut self, plan: AnchorPlan, result: usize) -> Result<()> {
        let n = plan.cities;
        let (k, l) = (plan.k, plan.anchors);
        let locs: Vec<Vec<usize>> = self.layout.locations[..k].to_vec();
        let anchors: Vec<Vec<usize>> = self.layout.locations[k..k + l].to_vec();
        let checks = self.layout.checks.clone();
        let divisors = proper_divisors(n);
        let check_for = |pos: usize| divisors.iter().position(|&d| d == pos).map(|c| checks[c]);

        let start = self.circ.mark();
        let mut forwarders = 0;
        for i in 1..=l {
            let base = (i - 1) * (k + 1);
            let mut ranges = Vec::with_capacity(k);
            for s in 0..k {
                let src = if s == 0 { (i > 1).then(|| anchors[i - 2].as_slice()) } else { Some(locs[s - 1].as_slice()) };
                ranges.push(self.forward(src, &locs[s])?);
            }
            for s in 0..k {
                if let Some(c) = check_for(base + 1 + s) {
                    or_gate(self.circ, &locs[s], c)?;
                }
            }
            self.forward(Some(&locs[k - 1]), &anchors[i - 1])?;
            if let Some(c) = check_for(base + k + 1) {
                or_gate(self.circ, &anchors[i - 1], c)?;
            }
            for r in ranges.into_iter().rev() {
                self.mirror(r, 1)?;
            }
            forwarders += 2 * k + 1;
        }
        let blocks_end = self.circ.mark();

        let rem = plan.remainder();
        let base = l * (k + 1);
        let partial_start = self.circ.mark();
        for s in 0..rem {
            let src = if s == 0 { anchors[l - 1].as_slice() } else { locs[s - 1].as_slice() };
            self.forward(Some(src), &locs[s])?;
            if base + 1 + s < n {
                if let Some(c) = check_for(base + 1 + s) {
                    or_gate(self.circ, &locs[s], c)?;
                }
            }
        }
        let partial_end = self.circ.mark();
        let final_reg = if rem == 0 { anchors[l - 1].clone() } else { locs[rem - 1].clone() };
        self.write_result(&checks, &final_reg, result)?;
        self.mirror(partial_start..partial_end, rem)?;
        self.mirror(start..blocks_end, forwarders)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsp::TspGraph;

    fn complete(n: usize) -> TspInstance {
        TspInstance::new(TspGraph::complete(n, |i, j| (i + j) as f64).unwrap()).unwrap()
    }

    #[test]
    fn k_opt_small_cases() {
        assert_eq!(k_opt(4, 2), 1);
        assert_eq!(k_opt(6, 3), 1);
        let p = AnchorPlan::optimal(6, 3);
        assert_eq!((p.k, p.anchors, p.remainder()), (1, 3, 0));
        assert!(AnchorPlan::new(4, 4).is_err());
        assert!(AnchorPlan::new(4, 0).is_err());
    }

    #[test]
    fn forwarder_matches_successor_map() {
        let inst = complete(5);
        let spec = ForwarderSpec::new(&inst).unwrap();
        let enc = inst.encoding();
        let mut ledger = QubitLedger::new();
        let cyc = ledger.allocate("cycle", enc.search_qubits()).unwrap();
        let cur = ledger.allocate("cur", enc.index_bits).unwrap();
        let out = ledger.allocate("out", enc.index_bits).unwrap();
        let scr = ledger.allocate("scratch", enc.choice_bits).unwrap();
        let mut circ = Circuit::new("f", ledger);
        build_index_forwarder(&mut circ, &spec, Some(cur.qubits()), out.qubits(), cyc.qubits(), scr.qubits()).unwrap();
        for word in (0..1u64 << enc.search_qubits()).step_by(37) {
            let w = inst.word(word);
            for i in 0..5usize {
                let mut s = BitState::new(circ.num_qubits());
                s.load(cyc.qubits(), word);
                s.load(cur.qubits(), i as u64);
                propagate(circ.gates(), &mut s).unwrap();
                let expect = inst.lists().successor(i, w.choice(i)).unwrap_or(i);
                assert_eq!(s.read(out.qubits()) as usize, expect);
                assert_eq!(s.read(cyc.qubits()), word);
                assert_eq!(s.read(cur.qubits()), i as u64);
                assert!(s.all_zero(scr.qubits()));
            }
        }
    }

    #[test]
    fn all_variants_match_theorem_on_k4() {
        let inst = complete(4);
        let enc = inst.encoding();
        for variant in [HcdVariant::Naive, HcdVariant::Improved, HcdVariant::anchored(enc)] {
            let flags = HcdOracle::new(&inst, variant).unwrap().flags().unwrap();
            for (v, &f) in flags.iter().enumerate() {
                let w = inst.word(v as u64);
                assert_eq!(f, inst.is_hamiltonian_theorem1(&w), "{variant:?} word {v:#b}");
            }
            assert_eq!(flags.iter().filter(|&&f| f).count(), 6);
        }
    }

    #[test]
    fn anchored_with_partial_block() {
        // N = 5, k = 2: one full block of three steps, two steps left over.
        let inst = complete(5);
        let plan = AnchorPlan::new(5, 2).unwrap();
        assert_eq!(plan.remainder(), 2);
        let flags = HcdOracle::new(&inst, HcdVariant::Anchored(plan)).unwrap().flags().unwrap();
        for (v, &f) in flags.iter().enumerate() {
            assert_eq!(f, inst.is_hamiltonian_theorem1(&inst.word(v as u64)));
        }
        assert_eq!(flags.iter().filter(|&&f| f).count(), 24);
    }

    #[test]
    fn anchored_forwarder_count_at_most_twice_linear() {
        for n in 4..=8usize {
            let inst = complete(n);
            let enc = inst.encoding();
            let lin = HcdOracle::new(&inst, HcdVariant::Improved).unwrap().standalone().unwrap().1;
            let anc = HcdOracle::new(&inst, HcdVariant::anchored(enc)).unwrap().standalone().unwrap().1;
            assert_eq!(lin.forwarders, 2 * n);
            assert!(anc.forwarders <= 2 * lin.forwarders, "n = {n}");
        }
    }

    #[test]
    fn too_few_ancillas() {
        let inst = complete(4);
        let o = HcdOracle::new(&inst, HcdVariant::Improved).unwrap();
        let mut circ = Circuit::with_qubits("h", 40);
        let cyc: Vec<usize> = (0..8).collect();
        let anc: Vec<usize> = (9..12).collect();
        assert!(matches!(o.build(&mut circ, &cyc, 8, &anc), Err(Error::InsufficientAncillas { .. })));
    }
}
