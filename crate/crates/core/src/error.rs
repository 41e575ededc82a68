use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed code spec: {0}")]
    Parse(String),
    #[error("check matrix must have m < n (got m={m}, n={n})")]
    Dimensions { m: usize, n: usize },
    #[error("row {row} of the check matrix is zero")]
    ZeroRow { row: usize },
    #[error("degree undefined for the zero polynomial")]
    UndefinedDegree,
    #[error("row partition must be a nonempty proper subset of the rows")]
    InvalidPartition,
    #[error("row {row} is not monomial in every column")]
    NonMonomialRow { row: usize },
    #[error("matrix has negative row exponents; causalize first")]
    NonCausal,
    #[error("no trellis module for syndrome value {zeta:#b}")]
    MissingModule { zeta: u32 },
    #[error("path enumeration exceeded cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("no admissible path reaches the final state")]
    NoAdmissiblePath,
    #[error("all survivors pruned at step {step}")]
    SurvivorsExhausted { step: usize },
    #[error("state functional window of {bits} bits exceeds the limit of {limit}")]
    WindowTooLarge { bits: usize, limit: usize },
    #[error("crossover probability {0} outside [0, 1]")]
    InvalidEpsilon(f64),
    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
