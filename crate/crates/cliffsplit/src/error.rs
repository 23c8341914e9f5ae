//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A value failed a structural invariant at construction time.
    #[error("validation error: {0}")]
    Validation(String),

    /// Two values that must share a parent group (or space) do not.
    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    /// Group-spec string could not be parsed; `offset` is a byte offset.
    #[error("parse error at offset {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    /// An operation's precondition does not hold for the given input.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A computation would exceed the configured desk-scale budget.
    #[error("resource budget exceeded in {stage}: {detail}")]
    Resource { stage: String, detail: String },

    /// An internal consistency check failed. These signal a bug, never
    /// a property of the input.
    #[error("internal contradiction: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn mismatch(msg: impl Into<String>) -> Self {
        Error::GroupMismatch(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn resource(stage: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Resource {
            stage: stage.into(),
            detail: detail.into(),
        }
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
