use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid-input: {0}")]
    InvalidInput(String),
    #[error("unsupported-rank: operation needs rank 2, got rank {0}")]
    UnsupportedRank(usize),
    #[error("resource-limit: {what} exceeded the cap of {cap}")]
    ResourceLimit { what: &'static str, cap: usize },
    #[error("parse-error: {msg} at position {pos}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Short machine-readable tag, e.g. `invalid-input`.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::UnsupportedRank(_) => "unsupported-rank",
            Error::ResourceLimit { .. } => "resource-limit",
            Error::Parse { .. } => "parse-error",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
