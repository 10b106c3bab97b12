//! File formats, reports and the command-line front end for `gqtsp-core`.
//!
//! * [`graph_file`]: JSON graph documents.
//! * [`commands`]: solve, sweep and qubit-report bodies with their
//!   serialisable results.
//! * [`verify`]: exhaustive circuit suites.
//! * [`manifest`]: run manifests written next to every artifact.
//! * [`cli`]: argument parsing and exit codes.

pub mod cli;
pub mod commands;
pub mod error;
pub mod graph_file;
pub mod manifest;
pub mod verify;

pub use error::{exit, CliError, Result};
