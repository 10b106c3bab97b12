//! Dense statevector simulator.
//!
//! X gates are never applied to memory. The state keeps a Pauli frame: a mask
//! of qubits whose X has been deferred, so physical index `p` holds the
//! amplitude of logical basis state `p ^ flips`. Controlled gates read the
//! frame when choosing which indices they touch, which keeps the long X
//! sandwiches of the oracle circuits free.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;

/// Default qubit bound: 2^28 amplitudes take 4 GiB.
pub const DEFAULT_MAX_QUBITS: usize = 28;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amps: Vec<Complex64>,
    flips: usize,
}

impl StateVector {
    /// `|0…0⟩` on `qubits` qubits, bounded by [`DEFAULT_MAX_QUBITS`].
    pub fn new(qubits: usize) -> Result<StateVector> {
        StateVector::with_limit(qubits, DEFAULT_MAX_QUBITS)
    }

    /// `|0…0⟩` on `qubits` qubits, refusing anything above `limit`.
    pub fn with_limit(qubits: usize, limit: usize) -> Result<StateVector> {
        if qubits == 0 {
            return Err(Error::EmptyState);
        }
        let hard = (usize::BITS as usize) - 5;
        if qubits > limit || qubits > hard {
            return Err(Error::ResourceExhausted { requested: qubits, limit: limit.min(hard) });
        }
        let dim = 1usize << qubits;
        let mut amps = Vec::new();
        amps.try_reserve_exact(dim)
            .map_err(|_| Error::ResourceExhausted { requested: qubits, limit: qubits - 1 })?;
        amps.resize(dim, Complex64::new(0.0, 0.0));
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { qubits, amps, flips: 0 })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(qubits: usize, index: u64) -> Result<StateVector> {
        let mut s = StateVector::new(qubits)?;
        if qubits < 64 && index >> qubits != 0 {
            return Err(Error::ValueOutOfRange { value: index, bits: qubits });
        }
        s.amps[0] = Complex64::new(0.0, 0.0);
        s.amps[index as usize] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// Builds a state from logical amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<StateVector> {
        if amps.len() < 2 || !amps.len().is_power_of_two() {
            return Err(Error::InvalidArgument("amplitude count must be a power of two ≥ 2"));
        }
        let qubits = amps.len().trailing_zeros() as usize;
        Ok(StateVector { qubits, amps, flips: 0 })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn dimension(&self) -> usize {
        self.amps.len()
    }

    /// Amplitude of logical basis state `index`.
    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index ^ self.flips]
    }

    /// All amplitudes in logical order.
    pub fn amplitudes(&self) -> Vec<Complex64> {
        (0..self.amps.len()).map(|i| self.amplitude(i)).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.qubits != other.qubits {
            return Err(Error::RegisterSize { expected: self.qubits, found: other.qubits });
        }
        Ok((0..self.amps.len())
            .map(|i| self.amplitude(i).conj() * other.amplitude(i))
            .sum())
    }

    fn check(&self, gate: &Gate) -> Result<()> {
        gate.validate(self.qubits)
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        self.check(gate)?;
        match gate {
            Gate::X { target } => self.flips ^= 1 << target,
            Gate::H { target } => self.hadamard(*target),
            Gate::Phase { target, angle } => {
                let f = phase_factor(*angle);
                let bit = 1usize << target;
                let want = bit & !self.flips;
                self.scale_where(bit, want, f);
            }
            Gate::ControlledPhase { control, target, angle } => {
                let f = phase_factor(*angle);
                let mask = (1usize << control) | (1usize << target);
                let want = mask & !self.flips;
                self.scale_where(mask, want, f);
            }
            Gate::Toffoli { controls, target } => self.mcx(controls, *target),
            Gate::Mcx { controls, target } => self.mcx(controls, *target),
            Gate::DiagonalPhase { qubits, angles } => self.diagonal(qubits, angles),
        }
        Ok(())
    }

    pub fn apply_gates(&mut self, gates: &[Gate]) -> Result<()> {
        for g in gates {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.num_qubits() > self.qubits {
            return Err(Error::RegisterSize { expected: circuit.num_qubits(), found: self.qubits });
        }
        self.apply_gates(circuit.gates())
    }

    fn hadamard(&mut self, q: usize) {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let bit = 1usize << q;
        // H is symmetric under conjugation by X except for the sign of the
        // |1⟩⟨1| entry, which moves to |0⟩⟨0|.
        let flipped = self.flips & bit != 0;
        let (m00, m11) = if flipped { (-s, s) } else { (s, -s) };
        let dim = self.amps.len();
        let mut base = 0;
        while base < dim {
            for i in base..base + bit {
                let a = self.amps[i];
                let b = self.amps[i + bit];
                self.amps[i] = a * m00 + b * s;
                self.amps[i + bit] = a * s + b * m11;
            }
            base += bit << 1;
        }
    }

    fn mcx(&mut self, controls: &[usize], target: usize) {
        if controls.is_empty() {
            self.flips ^= 1 << target;
            return;
        }
        let cmask = controls.iter().fold(0usize, |m, &c| m | (1 << c));
        let tbit = 1usize << target;
        let want = cmask & !self.flips;
        let fixed = cmask | tbit;
        let free = (self.amps.len() - 1) & !fixed;
        for_each_subset(free, |s| {
            let i = s | want;
            self.amps.swap(i, i | tbit);
        });
    }

    fn scale_where(&mut self, mask: usize, want: usize, f: Complex64) {
        let free = (self.amps.len() - 1) & !mask;
        for_each_subset(free, |s| self.amps[s | want] *= f);
    }

    fn diagonal(&mut self, qubits: &[usize], angles: &[f64]) {
        let factors: Vec<Complex64> = angles.iter().map(|&a| phase_factor(a)).collect();
        for p in 0..self.amps.len() {
            let l = p ^ self.flips;
            let mut v = 0usize;
            for (k, &q) in qubits.iter().enumerate() {
                v |= ((l >> q) & 1) << k;
            }
            self.amps[p] *= factors[v];
        }
    }

    /// Marginal distribution of the value held by `qubits` (`qubits[0]` is bit 0).
    pub fn marginal(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        self.check_qubit_list(qubits)?;
        let mut out = alloc::vec![0.0; 1usize << qubits.len()];
        for (p, a) in self.amps.iter().enumerate() {
            let pr = a.norm_sqr();
            if pr == 0.0 {
                continue;
            }
            let l = p ^ self.flips;
            let mut v = 0usize;
            for (k, &q) in qubits.iter().enumerate() {
                v |= ((l >> q) & 1) << k;
            }
            out[v] += pr;
        }
        Ok(out)
    }

    /// Probability that `qubits` read `value`.
    pub fn basis_probability(&self, qubits: &[usize], value: u64) -> Result<f64> {
        self.check_qubit_list(qubits)?;
        if qubits.len() < 64 && value >> qubits.len() != 0 {
            return Err(Error::ValueOutOfRange { value, bits: qubits.len() });
        }
        let mut mask = 0usize;
        let mut want = 0usize;
        for (k, &q) in qubits.iter().enumerate() {
            mask |= 1 << q;
            want |= (((value >> k) & 1) as usize) << q;
        }
        let want = want ^ (self.flips & mask);
        let free = (self.amps.len() - 1) & !mask;
        let mut total = 0.0;
        for_each_subset(free, |s| total += self.amps[s | want].norm_sqr());
        Ok(total)
    }

    /// Samples `shots` readouts of `qubits`, keyed by register value.
    pub fn sample_values(&self, qubits: &[usize], shots: u64, seed: u64) -> Result<BTreeMap<u64, u64>> {
        if shots == 0 {
            return Err(Error::NoShots);
        }
        let dist = self.marginal(qubits)?;
        let mut cumulative = Vec::with_capacity(dist.len());
        let mut acc = 0.0;
        for p in &dist {
            acc += p;
            cumulative.push(acc);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = BTreeMap::new();
        for _ in 0..shots {
            let u: f64 = rng.gen::<f64>() * acc;
            let mut v = cumulative.partition_point(|&c| c <= u);
            if v >= dist.len() {
                v = dist.len() - 1;
            }
            // Skip zero-probability values that sit on a plateau.
            while dist[v] == 0.0 && v + 1 < dist.len() {
                v += 1;
            }
            *counts.entry(v as u64).or_insert(0) += 1;
        }
        Ok(counts)
    }

    /// Samples `shots` readouts of `qubits`, keyed by bitstring with the last
    /// qubit of the list leftmost.
    pub fn sample(&self, qubits: &[usize], shots: u64, seed: u64) -> Result<BTreeMap<String, u64>> {
        let counts = self.sample_values(qubits, shots, seed)?;
        Ok(counts
            .into_iter()
            .map(|(v, c)| (bitstring(v, qubits.len()), c))
            .collect())
    }

    fn check_qubit_list(&self, qubits: &[usize]) -> Result<()> {
        if qubits.is_empty() {
            return Err(Error::EmptyQubitList);
        }
        for (i, &q) in qubits.iter().enumerate() {
            if q >= self.qubits {
                return Err(Error::QubitOutOfRange { qubit: q, qubits: self.qubits });
            }
            if qubits[..i].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        Ok(())
    }
}

/// `value` as `width` binary digits, most significant first.
pub fn bitstring(value: u64, width: usize) -> String {
    (0..width)
        .rev()
        .map(|k| if (value >> k) & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn phase_factor(angle: f64) -> Complex64 {
    Complex64::new(libm::cos(angle), libm::sin(angle))
}

/// Calls `f` on every subset of the bits in `free`, in increasing order.
fn for_each_subset(free: usize, mut f: impl FnMut(usize)) {
    let mut s = 0usize;
    loop {
        f(s);
        if s == free {
            break;
        }
        s = s.wrapping_sub(free) & free;
    }
}
