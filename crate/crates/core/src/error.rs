use thiserror::Error;

/// Errors raised by the simulation library.
///
/// Parsing failures of circuit files use [`crate::qcf::ParseError`] instead,
/// because they carry a source location.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("capacity exceeded: {what} requires {requested}, limit is {limit}")]
    CapacityExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("eigendecomposition did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("invalid ensemble probabilities: {0}")]
    ProbabilitiesInvalid(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("unknown gate '{0}'")]
    UnknownGate(String),

    #[error("gate {gate} has arity {expected}, got {found}")]
    ArityMismatch {
        gate: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("wire {wire} out of range for {num_qubits} qubit(s)")]
    WireOutOfRange { wire: usize, num_qubits: usize },

    #[error("wire {0} listed more than once")]
    DuplicateWire(usize),

    #[error("invalid subsystem: {0}")]
    InvalidSubsystem(String),

    #[error("non-finite value: {0}")]
    NonFinite(&'static str),

    #[error("invalid basis label '{0}'")]
    InvalidLabel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
