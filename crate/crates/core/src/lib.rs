//! Grover-adaptive-search solver for the traveling salesman problem, simulated
//! at gate level.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! * [`gate`], [`ledger`], [`circuit`], [`statevector`] and [`trace`] form the
//!   simulation substrate: primitive gates, qubit bookkeeping, ordered gate
//!   lists, a dense statevector and a Boolean propagator for classical
//!   (permutation) circuits.
//! * [`synth`] builds composite circuits from primitives: multi-controlled NOTs
//!   under ancilla constraints, OR gates, quantum-addressed registers, the
//!   controlled cost operator, QFT, constant comparators and the diffusion
//!   operator.
//! * [`tsp`] is the classical model: graphs, adjacency lists, cycle words,
//!   cycle-validity theorems, brute force and phase normalisation.
//! * [`clc`] and [`hcd`] build the two oracles, [`program`] assembles a full
//!   Grover iteration, [`gas`] drives the adaptive search and [`budget`] does
//!   the qubit accounting.
//!
//! Qubit ordering is global: qubit 0 of a register is the least significant
//! bit of the register value, and basis index bit `q` is qubit `q`.
#![no_std]

extern crate alloc;

pub mod budget;
pub mod circuit;
pub mod clc;
mod error;
pub mod gas;
pub mod gate;
pub mod hcd;
pub mod ledger;
pub mod math;
pub mod program;
pub mod statevector;
pub mod synth;
pub mod trace;
pub mod tsp;

pub use circuit::{Circuit, CircuitStats};
pub use error::{Error, Result};
pub use gate::{Gate, GateKind};
pub use ledger::{QubitLedger, Register};
pub use statevector::StateVector;
