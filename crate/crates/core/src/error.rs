use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate parameter vector for qubit {qubit}: norm below threshold")]
    DegenerateParameter { qubit: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid qubit count {n}: {reason}")]
    InvalidQubitCount { n: usize, reason: &'static str },

    #[error("invalid qubit pair ({i}, {j}) for {n} qubits")]
    InvalidPair { i: usize, j: usize, n: usize },

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("probability vector is not normalized (sum = {sum})")]
    NotNormalized { sum: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("unknown gain preset")]
    UnknownPreset,

    #[error("perturbation magnitude must be positive, got {0}")]
    NonPositivePerturbation(f64),

    #[error("readout confusion matrix for qubit {qubit} is singular")]
    SingularConfusion { qubit: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),

    #[error("oracle limited to {max} qubits, got {n}")]
    OracleGuard { n: usize, max: usize },
}
