use thiserror::Error;

use crate::game::Position;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Parameters outside `0 < a < b < min(m, n)` or beyond the supported width.
    #[error("invalid game parameters: {0}")]
    InvalidParams(String),

    /// Input is well formed but outside the operation's domain.
    #[error("{0}")]
    Domain(String),

    /// The tuple is valid but a theorem hypothesis does not apply to it.
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("state space of {required} exceeds the budget of {budget}")]
    Resource { required: u64, budget: u64 },

    #[error("position {0} is not reachable")]
    NotFound(Position),
}

impl Error {
    /// Stable machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParams(_) => "invalid_params",
            Error::Domain(_) => "domain",
            Error::Hypothesis(_) => "hypothesis",
            Error::Resource { .. } => "resource",
            Error::NotFound(_) => "not_found",
        }
    }
}
