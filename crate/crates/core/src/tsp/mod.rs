//! Classical model of the traveling salesman instance: weighted graph,
//! adjacency-list encoding of candidate cycles, validity tests, exhaustive
//! search and phase normalisation for the cost oracle.
//!
//! A candidate cycle is a word of `N` choices, one per city: choice `C_i`
//! picks entry `C_i` of city `i`'s sorted neighbour list as its successor.
//! Each choice takes `m` bits and city 0 occupies the least significant
//! slice, so the word is an integer of `m·N` bits.

mod brute;
mod graph;
mod phases;
mod random;
mod word;

pub use brute::{brute_force_best, BruteForce, RankedCycle};
pub use graph::{AdjacencyLists, TspGraph};
pub use phases::{normalize_phases, normalize_phases_with, NormalizedPhases, PhaseScaling};
pub use random::{random_euclidean_graph, Metric};
pub use word::{CycleWord, Encoding, TspInstance};

pub use crate::math::{proper_divisors, sigma0};
