//! Error type shared by all modules.

use thiserror::Error;

/// Errors raised by exact-sequence, Bessel, and expansion evaluators.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested radius target cannot be met at the configured precision.
    #[error("precision insufficient: {0}")]
    PrecisionInsufficient(String),

    /// A configured memory or size budget would be exceeded.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// The truncated sum plus tail bound does not isolate a unique integer.
    /// Carries the achieved bracket as decimal strings.
    #[error("failed to resolve an integer: bracket [{lo}, {hi}]")]
    ResolutionFailure { lo: String, hi: String },

    /// `n` is below the validity cutoff `n(N)` of the truncated expansion.
    #[error("cutoff violation: n = {n} < n({order}) = {cutoff}")]
    CutoffViolation { n: u64, order: u32, cutoff: u64 },

    /// A certified ceiling could not be decided: the value is provably
    /// within 2^-60 of an integer boundary.
    #[error("ceiling ambiguous near an integer boundary: {0}")]
    CeilingAmbiguous(String),

    /// No Kloosterman sign variant (or more than one) resolves the
    /// calibration range to exact integers.
    #[error("calibration failure: {0}")]
    Calibration(String),

    /// Requested indices fall outside the materialized table range.
    #[error("range error: {0}")]
    Range(String),

    /// A precondition on the arguments was violated.
    #[error("precondition violation: {0}")]
    Precondition(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed cache file or serialized input.
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
