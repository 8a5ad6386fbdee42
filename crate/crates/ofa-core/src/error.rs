use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OfaError {
    /// Malformed or mismatched input (wrong ring, wrong family, bad index).
    #[error("structural error: {0}")]
    Structural(String),
    #[error("capacity exceeded: {what} has {size} elements, cap is {cap}")]
    Capacity { what: String, size: u128, cap: u128 },
    /// Operation applied outside its domain, e.g. a scalar action on a non-augmentation element.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, OfaError>;

pub(crate) fn structural<T>(msg: impl Into<String>) -> Result<T> {
    Err(OfaError::Structural(msg.into()))
}
