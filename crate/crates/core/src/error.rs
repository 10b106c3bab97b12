use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a {requested}-qubit state exceeds the simulator bound of {limit} qubits")]
    ResourceExhausted { requested: usize, limit: usize },
    #[error("a state needs at least one qubit")]
    EmptyState,
    #[error("qubit {qubit} is out of range for a {qubits}-qubit state")]
    QubitOutOfRange { qubit: usize, qubits: usize },
    #[error("gate uses qubit {0} more than once")]
    DuplicateQubit(usize),
    #[error("qubit {0} is not allocated in the ledger")]
    Unallocated(usize),
    #[error("unknown register `{0}`")]
    UnknownRegister(String),
    #[error("register `{0}` is already allocated")]
    DuplicateRegister(String),
    #[error("value {value} does not fit in {bits} bits")]
    ValueOutOfRange { value: u64, bits: usize },
    #[error("qubit list is empty")]
    EmptyQubitList,
    #[error("shot count must be at least one")]
    NoShots,
    #[error("zeroed-ancilla pool exhausted: requested {requested}, {available} free")]
    PoolExhausted { requested: usize, available: usize },
    #[error("not enough ancillas: need {needed}, got {available}")]
    InsufficientAncillas { needed: usize, available: usize },
    #[error("registers overlap on qubit {0}")]
    OverlappingRegisters(usize),
    #[error("table shape mismatch: expected {expected}, found {found}")]
    TableWidthMismatch { expected: usize, found: usize },
    #[error("phase table has {found} entries, expected {expected}")]
    PhaseTableSize { expected: usize, found: usize },
    #[error("register has {found} qubits, expected {expected}")]
    RegisterSize { expected: usize, found: usize },
    #[error("threshold {threshold} is out of range for a {bits}-bit register")]
    ThresholdOutOfRange { threshold: u64, bits: usize },
    #[error("gate {index} is not a classical permutation gate")]
    NonClassicalGate { index: usize },
    #[error("ancilla register was not restored for input word {word:#x}")]
    AncillaNotRestored { word: u64 },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("city {city} has degree {degree}; every city needs at least two roads")]
    DegreeTooSmall { city: usize, degree: usize },
    #[error("choice {choice} is out of range for city {city}")]
    ChoiceOutOfRange { city: usize, choice: u32 },
    #[error("degree bound {degree} is infeasible for {cities} cities")]
    InvalidDegree { cities: usize, degree: usize },
    #[error("pruning to degree {degree} failed; regenerate with another seed")]
    Regenerate { degree: usize },
    #[error("graph has no Hamiltonian cycle")]
    NoHamiltonianCycle,
    #[error("normalised cycle phase {turns} turns does not fit below one turn")]
    PhaseOverflow { turns: f64 },
    #[error("the optimal cycle cannot be isolated at {precision} bits of precision")]
    NotIsolatable { precision: usize },
    #[error("anchor plan with k = {k} is infeasible for {cities} cities")]
    InfeasiblePlan { cities: usize, k: usize },
    #[error("marked count {marked} is invalid for a {qubits}-qubit search space")]
    InvalidMarkedCount { marked: u64, qubits: usize },
    #[error("malformed gate list at line {line}")]
    MalformedGateList { line: usize },
    #[error("{0}")]
    InvalidArgument(&'static str),
}
