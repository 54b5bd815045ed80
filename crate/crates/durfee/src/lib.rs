//! Exact combinatorics of the Durfee-square size (the h-index of a
//! partition) under the uniform distribution on partitions of `n`.
//!
//! The pipeline has four stages, one module each:
//!
//! * [`series`] - expand the Durfee-square refinement of the Euler–Gauss
//!   identity into the exact table `d(n,k)` of partitions of `n` with
//!   Durfee size `k`, cross-checkable against the pentagonal-number
//!   recurrence for `p(n)`.
//! * [`moments`] - turn table rows into exact rational distributions and
//!   compute means, central moments and float standardized moments.
//! * [`fit`] - fit finite expansions in powers of `n^{-1/2}` to the moment
//!   sequences and compare the fitted limits with standard normal moments:
//!   an empirical demonstration that the Durfee size is asymptotically
//!   normal, concentrated about a mean of `(sqrt(6) ln 2 / pi) sqrt(n)`.
//! * [`oracle`] - brute-force enumeration of partitions for small `n`, used
//!   to validate every exact quantity the series pipeline produces.
//!
//! The [`cli`] module carries the run configuration and the report writers
//! behind the `durfee` binary; see the `examples/` directory for direct
//! library usage.

pub mod cli;
pub mod error;
pub mod fit;
pub mod moments;
pub mod oracle;
pub mod series;

pub use error::{Error, Result};
pub use fit::{
    concentration_ratio, default_alpha_basis, default_mean_basis, fit_sqrt_series, limit_estimate,
    normality_report, reference_mean_constant, AsymptoticModel, FitResult, HalfInteger,
    NormalityReport, ToleranceSet,
};
pub use moments::{
    central_moment, mean, moment_sweep, normal_moment, pgf_row, rational_to_f64,
    standardized_moment, MomentRecord, ProbabilityRow,
};
pub use oracle::{
    brute_durfee_histogram, cross_check, enumerate_partitions, BruteHistogram, CheckReport,
    Mismatch, ORACLE_SAFETY_BOUND,
};
pub use series::{
    inv_square_factor_series, partition_numbers, DurfeeTable, Partition, TruncatedSeries,
};
