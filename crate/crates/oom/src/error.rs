//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, OomError>;

/// Everything that can go wrong when building or querying a model.
#[derive(Debug, Error)]
pub enum OomError {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,

    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),

    #[error("unknown symbol `{symbol}`")]
    UnknownSymbol { symbol: String },

    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        got: usize,
    },

    #[error("invalid model: {check} residual {residual:.3e} exceeds tolerance {tolerance:.1e}")]
    InvalidModel {
        check: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("negative probability {value:.3e} for a string of length {length}")]
    NegativeProbability { value: f64, length: usize },

    #[error("zero-probability conditioning prefix `{prefix}`")]
    ZeroProbability { prefix: String },

    #[error("sampling failed at step {step}: nonpositive total mass {mass:.3e}")]
    SamplingFailed { step: usize, mass: f64 },

    #[error("enumeration budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("lift to level {target} needs {needed} strings, over the budget of {budget}")]
    LiftBudgetExceeded {
        target: usize,
        needed: u128,
        budget: u64,
    },

    #[error("cannot lift a level-{level} set down to level {target}")]
    LiftBelowLevel { level: usize, target: usize },

    #[error("malformed cylinder set: {0}")]
    MalformedCylinder(String),

    #[error("sets are defined over different alphabets")]
    AlphabetMismatch,

    #[error("future functions are defined over different models")]
    ModelMismatch,

    #[error("parts {i} and {j} are not disjoint")]
    NotDisjoint { i: usize, j: usize },

    #[error("block {index} of the {side} partition is empty")]
    EmptyPartitionBlock { side: &'static str, index: usize },

    #[error("not a pair of partitions of the same ground set: {0}")]
    NotAPartition(String),

    #[error(
        "crossing pair: block {i} of the first partition and block {j} of the second \
         overlap without containment"
    )]
    CrossingPair { i: usize, j: usize },

    #[error("model file schema violation: {0}")]
    Schema(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
