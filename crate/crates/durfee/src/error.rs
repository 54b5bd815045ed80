//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A part sequence is not a valid partition (increasing step or zero part).
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// An index is outside the range covered by a table or record.
    #[error("n = {n} is outside the computed range 0..={nmax}")]
    OutOfRange { n: usize, nmax: usize },

    /// The distribution at this n is a point mass; standardized moments are undefined.
    #[error("degenerate distribution at n = {n}: the statistic is deterministic and m_2 = 0")]
    DegenerateDistribution { n: usize },

    /// Zero variance passed to a standardized-moment computation.
    #[error("zero variance: standardized moments are undefined")]
    ZeroVariance,

    /// Brute-force enumeration refused without an explicit override.
    #[error("enumeration of partitions of {n} exceeds the safety bound {bound}; use the explicit override to proceed")]
    OracleBoundExceeded { n: usize, bound: usize },

    /// Fewer samples than basis exponents.
    #[error("underdetermined fit: {samples} sample(s) for {exponents} basis exponent(s)")]
    Underdetermined { samples: usize, exponents: usize },

    /// The least-squares system is numerically rank deficient.
    #[error("ill-conditioned fit: {0}")]
    IllConditioned(String),

    /// A fit or model was used outside its contract (e.g. a limit of a divergent basis).
    #[error("model misuse: {0}")]
    ModelMisuse(String),

    /// Configuration or argument validation failure.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The request would exceed the configured memory budget.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 for usage/validation errors,
    /// 3 for resource exhaustion. (0 = pass and 1 = fail are reserved
    /// for successful runs whose *outcome* is a failure report.)
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit(_) => 3,
            _ => 2,
        }
    }
}
