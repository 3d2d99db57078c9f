use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside its admissible range.
    #[error("invalid `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("operation requires a continuous backoff law, got discrete points")]
    NotContinuous,

    #[error("probabilities sum to {sum}, which exceeds 1")]
    ProbabilitySum { sum: f64 },

    #[error("quadrature did not reach tolerance {tolerance:e} (error estimate {estimate:e} after {intervals} intervals)")]
    QuadratureNonConvergence {
        tolerance: f64,
        estimate: f64,
        intervals: usize,
    },

    #[error("success probability is zero; {0}")]
    ZeroProbability(&'static str),

    #[error("refinement diverged: refined objective {refined} exceeds best grid value {grid}")]
    RefinementDiverged { refined: f64, grid: f64 },

    #[error("enumeration of {outcomes} joint outcomes exceeds the cap of {cap}")]
    EnumerationTooLarge { outcomes: f64, cap: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

/// Checks `lo <= value <= hi`, rejecting NaN.
pub(crate) fn check_closed(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value >= lo && value <= hi {
        Ok(())
    } else {
        Err(Error::invalid(
            name,
            format!("{value} is outside [{lo}, {hi}]"),
        ))
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(
            name,
            format!("{value} must be positive and finite"),
        ))
    }
}
