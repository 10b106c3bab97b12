//! Composite circuits built from primitive gates.
//!
//! Every builder appends to a [`Circuit`](crate::Circuit) and returns an error
//! instead of emitting anything partial when its inputs are inconsistent
//! (overlapping registers, too few ancillas, mis-sized tables).

mod compare;
mod diffusion;
mod logic;
mod mcx;
mod phase;
mod qrom;

pub use compare::{compare_const, Direction};
pub use diffusion::diffusion;
pub use logic::{nor_gate, or_gate};
pub use mcx::{mcx_borrowed, mcx_one_zeroed};
pub use phase::{ccphase, controlled_u, iqft, qft, swap};
pub use qrom::{qacr, qaqr, visit_order, ClassicalTable};
