use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no period found within cap {cap}")]
    PeriodExhausted { cap: u64 },

    #[error("closure exceeded member cap {cap}")]
    ClosureExhausted { cap: usize },

    #[error("size guard: {0}")]
    SizeGuard(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("zero-probability branch at site {site} (p = {probability:e})")]
    ZeroProbability { site: usize, probability: f64 },
}

impl Error {
    /// True for the resource-cap family (period, closure, size guards).
    pub fn is_exhaustion(&self) -> bool {
        matches!(
            self,
            Error::PeriodExhausted { .. } | Error::ClosureExhausted { .. } | Error::SizeGuard(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}
