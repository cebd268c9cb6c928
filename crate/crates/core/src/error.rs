//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by code construction, state manipulation and decoding.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Young diagram (r1={r1}, r2={r2}): rows must satisfy r1 >= r2 >= 0")]
    InvalidDiagram { r1: usize, r2: usize },

    #[error("invalid Bratteli path: {0}")]
    InvalidPath(String),

    #[error("problem size over guard: {0}")]
    SizeLimit(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("invalid code parameters: {0}")]
    InvalidCode(String),

    #[error("projector set violates completeness (deviation {deviation:.3e})")]
    IncompleteProjectors { deviation: f64 },

    #[error("channel is not trace preserving (deviation {deviation:.3e})")]
    NotTracePreserving { deviation: f64 },

    #[error("invalid operator support: {0}")]
    BadSupport(String),

    #[error("non-bijective permutation")]
    BadPermutation,

    #[error("state is unnormalized (norm deviation {0:.3e})")]
    Unnormalized(f64),

    #[error("tableau does not support the code: {0}")]
    UncorrectibleTableau(String),

    #[error("Knill-Laflamme condition violated: {0}")]
    KlViolation(String),

    #[error("decode error: {0}")]
    Decode(String),

    #[error("rebalancing input leaked outside the working span (leak probability {0:.3e})")]
    CodespaceLeak(f64),

    #[error("degenerate Gram-Schmidt: operator maps codeword onto itself; pick a different E")]
    OperatorChoice,

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("decode calibration mismatch: {0}")]
    Calibration(String),

    #[error("deletion syndrome inconsistent: shift a={a} exceeds deletion count t={t}")]
    InconsistentShift { a: usize, t: usize },

    #[error("Fock-space cutoff too small: truncation tail population {tail:.3e}")]
    CutoffTooSmall { tail: f64 },

    #[error("did not converge within {0} rounds")]
    NonConvergence(usize),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
