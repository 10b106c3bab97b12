//! Mapping road costs to phases for the cost oracle.
//!
//! Minimising cost is turned into maximising phase: road `(i, j)` gets weight
//! `M − a_ij` with `M` the largest road cost, and weights are scaled by `λ`
//! turns per cost unit. A word's phase is the sum of its cities' table
//! entries, so a valid cycle of cost `c` has phase `2π·λ·(N·M − c)`.
//! Out-of-range choice slots get phase zero.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::math::round;

use super::word::{CycleWord, TspInstance};

/// How `λ` is chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PhaseScaling {
    /// Largest `λ` keeping every in-range word's phase at most
    /// `2π(1 − 2^{−t})`.
    Fit,
    /// `λ = q / 2^t`: one cost unit is `q` readout buckets. With integer costs
    /// every phase is an exact multiple of `2π/2^t`.
    BucketsPerUnit(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedPhases {
    precision: usize,
    cities: usize,
    max_cost: f64,
    scale: f64,
    /// Per city, `2^m` entries in turns (fractions of 2π).
    turns: Vec<Vec<f64>>,
}

/// [`normalize_phases_with`] using [`PhaseScaling::Fit`].
pub fn normalize_phases(inst: &TspInstance, precision: usize) -> Result<NormalizedPhases> {
    normalize_phases_with(inst, precision, PhaseScaling::Fit)
}

pub fn normalize_phases_with(
    inst: &TspInstance,
    precision: usize,
    scaling: PhaseScaling,
) -> Result<NormalizedPhases> {
    if precision == 0 || precision > 52 {
        return Err(Error::InvalidArgument("precision must be between 1 and 52 bits"));
    }
    let g = inst.graph();
    let n = inst.cities();
    let m = inst.encoding().choice_bits;
    let max_cost = g.max_cost();
    let weights: Vec<Vec<f64>> = (0..n)
        .map(|i| inst.lists().get(i).iter().map(|&j| max_cost - g.cost(i, j)).collect())
        .collect();
    let budget: f64 = weights.iter().map(|w| w.iter().copied().fold(0.0, f64::max)).sum();
    let limit = 1.0 - 1.0 / (1u64 << precision) as f64;
    let scale = match scaling {
        PhaseScaling::Fit => {
            if budget > 0.0 {
                limit / budget
            } else {
                limit
            }
        }
        PhaseScaling::BucketsPerUnit(q) => {
            let s = q as f64 / (1u64 << precision) as f64;
            if budget * s > limit + 1e-12 {
                return Err(Error::PhaseOverflow { turns: budget * s });
            }
            s
        }
    };
    let turns = weights
        .iter()
        .map(|w| {
            let mut row: Vec<f64> = w.iter().map(|&x| x * scale).collect();
            row.resize(1 << m, 0.0);
            row
        })
        .collect();
    Ok(NormalizedPhases { precision, cities: n, max_cost, scale, turns })
}

impl NormalizedPhases {
    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn cities(&self) -> usize {
        self.cities
    }

    /// `M`, the largest road cost.
    pub fn max_cost(&self) -> f64 {
        self.max_cost
    }

    /// `λ`, turns per unit of cost.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Angle table (radians) of `city` for `U^power`.
    pub fn angles(&self, city: usize, power: u64) -> Vec<f64> {
        self.turns[city]
            .iter()
            .map(|&t| {
                let x = t * power as f64;
                TAU * (x - libm::floor(x))
            })
            .collect()
    }

    /// Phase of a word in turns (not reduced).
    pub fn turns(&self, word: &CycleWord) -> f64 {
        word.choices()
            .iter()
            .enumerate()
            .map(|(i, &c)| self.turns[i][c as usize])
            .sum()
    }

    /// Readout bucket `round(2^t · turns) mod 2^t` that exact phase estimation
    /// targets.
    pub fn bucket(&self, word: &CycleWord) -> u64 {
        self.bucket_of_turns(self.turns(word))
    }

    fn bucket_of_turns(&self, turns: f64) -> u64 {
        let size = 1u64 << self.precision;
        (round(turns * size as f64) as i64).rem_euclid(size as i64) as u64
    }

    /// Bucket of a valid cycle with total cost `cost`.
    pub fn bucket_for_cost(&self, cost: f64) -> u64 {
        self.bucket_of_turns(self.scale * (self.cities as f64 * self.max_cost - cost))
    }

    /// Cost a bucket decodes to (inverse of [`Self::bucket_for_cost`]).
    pub fn cost_for_bucket(&self, bucket: u64) -> f64 {
        let size = (1u64 << self.precision) as f64;
        self.cities as f64 * self.max_cost - bucket as f64 / (size * self.scale)
    }

    /// True when every table entry is a whole number of readout buckets, so
    /// phase estimation reads every word's bucket with certainty.
    pub fn is_exact(&self) -> bool {
        let size = (1u64 << self.precision) as f64;
        self.turns
            .iter()
            .flatten()
            .all(|&t| (t * size - round(t * size)).abs() < 1e-9)
    }
}
