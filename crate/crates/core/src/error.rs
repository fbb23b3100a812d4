use thiserror::Error;

/// Errors shared by every module.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("enumeration budget exceeded: {required} items needed, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("empty window: {0}")]
    EmptyWindow(String),
    #[error("invalid support: {0}")]
    InvalidSupport(String),
    #[error("invalid horizon: {0}")]
    InvalidHorizon(String),
    #[error("precondition violated at vertex {vertex}: {reason}")]
    Precondition { vertex: String, reason: String },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("falsified invariant: {0}")]
    Falsified(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
