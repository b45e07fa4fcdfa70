use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SatakeError {
    /// Malformed or out-of-domain input.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// An enumeration or interpolation budget ran out before the answer stabilized.
    #[error("budget exhausted: {0}")]
    Budget(String),
    /// Two independent computation routes disagreed.
    #[error("consistency failure: {0}")]
    Inconsistent(String),
}

impl SatakeError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        SatakeError::Invalid(msg.into())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SatakeError::Invalid(_) => "invalid",
            SatakeError::Budget(_) => "budget",
            SatakeError::Inconsistent(_) => "inconsistent",
        }
    }
}

pub type Result<T> = std::result::Result<T, SatakeError>;
