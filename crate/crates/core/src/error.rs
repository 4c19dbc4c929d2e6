//! Error types shared across the simulator and predictor modules.

use thiserror::Error;

/// Errors produced by state manipulation, oracle construction, and the
/// closed-form predictors.
#[derive(Debug, Error)]
pub enum Error {
    /// A register wider than the configured qubit limit was requested.
    #[error("register width {requested} exceeds the {limit}-qubit limit (set QSEARCH_MAX_QUBITS to raise it)")]
    CapacityExceeded { requested: u32, limit: u32 },

    /// A qubit index does not exist in the register.
    #[error("qubit {qubit} out of range for a {width}-qubit register")]
    QubitOutOfRange { qubit: u32, width: u32 },

    /// A basis-state index does not exist in the search space.
    #[error("index {index} out of range for a search space of {size} items")]
    IndexOutOfRange { index: usize, size: usize },

    /// A matrix handed to the dense-unitary path failed the unitarity check.
    #[error("matrix is not unitary (max deviation {deviation:.3e} exceeds {tolerance:.1e})")]
    NonUnitary { deviation: f64, tolerance: f64 },

    /// A malformed marked-set specification string.
    #[error("marked-spec parse error at byte {pos}: {reason}")]
    MarkedSpecParse { pos: usize, reason: String },

    /// Preconditions on an operation's arguments were violated.
    #[error("{0}")]
    InvalidArgument(String),

    /// The simulator reached a state that its own invariants forbid.
    #[error("internal invariant violation: {0}")]
    InvariantViolation(String),

    /// I/O failure while reading a `file:` marked-set specification.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
