use std::io;

use thiserror::Error;

use crate::oracle::ElementId;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The caller violated a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("element {id} is not part of the ground set ({reason})")]
    InvalidElement { id: ElementId, reason: &'static str },

    /// Exhaustive enumeration refused because the instance is too large.
    #[error("instance too large for exhaustive search: {size} elements (limit {limit})")]
    TooLarge { size: usize, limit: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no edges")]
    EmptyGraph,

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("missing or invalid objective parameter: {0}")]
    Parameter(String),

    /// An independent verification route disagreed with the primary one.
    #[error("verification mismatch: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
