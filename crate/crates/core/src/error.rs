use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("qubit index {0} listed more than once")]
    DuplicateIndex(usize),

    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("at most {max} qubits are supported, got {n}")]
    TooManyQubits { n: usize, max: usize },

    #[error("cannot parse Pauli operator from {0:?}")]
    Parse(String),

    #[error("distance {0} is invalid: distances must be odd and at least 3")]
    InvalidDistance(usize),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("operator has a nonzero syndrome; logical class is undefined")]
    NonzeroSyndrome,

    #[error("syndrome has {got} bits, code has {expected} generators")]
    SyndromeLength { got: usize, expected: usize },

    #[error("matching requires an even number of nodes, got {0}")]
    OddNodeCount(usize),

    #[error("decoder {decoder} cannot be used here: {reason}")]
    IncompatibleDecoder { decoder: &'static str, reason: String },

    #[error("exhaustive job needs {required} decodes, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("no crossing of the shifted uncoded line found in [{lo}, {hi}]")]
    NoCrossing { lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
