use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// The variants are grouped by how a caller is expected to react: bad
/// input (`InvalidType`, `Shape`, `Domain`, `Validation`, `Unsupported`),
/// refusal to do unreasonable work (`Resource`), and internal failures that
/// indicate a bug or an uncertifiable numeric result (`Consistency`,
/// `Precision`).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid type `{token}`: {reason}")]
    InvalidType { token: String, reason: String },

    #[error("shape mismatch: expected length {expected}, got {got}")]
    Shape { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("precision error: {0}")]
    Precision(String),
}

impl Error {
    /// Short machine-readable kind tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidType { .. } => "invalid_type",
            Error::Shape { .. } => "shape",
            Error::Domain(_) => "domain",
            Error::Validation(_) => "validation",
            Error::Unsupported(_) => "unsupported",
            Error::Resource(_) => "resource",
            Error::Consistency(_) => "consistency",
            Error::Precision(_) => "precision",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn consistency(msg: impl Into<String>) -> Error {
    Error::Consistency(msg.into())
}
