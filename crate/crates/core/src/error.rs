use thiserror::Error;

/// Failures reported by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function} has a pole at {at}")]
    Pole { function: &'static str, at: f64 },

    #[error("{0}")]
    Divergence(String),

    #[error("{0}")]
    Domain(String),

    #[error("{0}")]
    Range(String),

    #[error("ill-conditioned fit: {0}")]
    IllConditioned(String),

    #[error("bracketing failed: {0}")]
    Bracket(String),

    #[error("series did not converge within {max_terms} terms")]
    NoConvergence { max_terms: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn divergence(msg: impl Into<String>) -> Self {
        Error::Divergence(msg.into())
    }

    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }
}
