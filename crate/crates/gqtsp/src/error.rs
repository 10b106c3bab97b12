use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const OTHER: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const RESOURCE: u8 = 3;
    pub const NO_CYCLE: u8 = 4;
    pub const MISMATCH: u8 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] gqtsp_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Refused(String),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> CliError {
        CliError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> u8 {
        use gqtsp_core::Error as E;
        match self {
            CliError::Core(E::ResourceExhausted { .. } | E::PoolExhausted { .. }) => exit::RESOURCE,
            CliError::Core(E::NoHamiltonianCycle | E::DegreeTooSmall { .. }) => exit::NO_CYCLE,
            CliError::Core(E::InvalidDegree { .. } | E::InvalidArgument(_)) => exit::USAGE,
            CliError::Refused(_) => exit::RESOURCE,
            CliError::Usage(_) => exit::USAGE,
            CliError::Mismatch(_) => exit::MISMATCH,
            _ => exit::OTHER,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
