//! Crate-wide error type.

use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    /// A precondition on the arguments was violated (zero denominator,
    /// unbalanced parameters, a composite where a prime was required, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A rational or Gaussian rational has `p` in a denominator where a
    /// p-integral value is required.
    #[error("{value} is not {p}-integral")]
    NotPIntegral { value: String, p: u64 },

    /// A lower parameter of a hypergeometric series hit a nonpositive
    /// integer before the series terminated; `k` is the term index whose
    /// denominator vanished.
    #[error("series pole: a lower parameter reaches zero at term k={k}")]
    Pole { k: u64 },

    /// An argument fell outside the supported range (for example a prime
    /// power too large for the gamma table backend).
    #[error("out of range: {0}")]
    Range(String),

    /// Random parameter sampling failed to find an admissible draw within
    /// the retry budget.
    #[error("sampler exhausted after {attempts} attempts")]
    SamplerExhausted { attempts: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
