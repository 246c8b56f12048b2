use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("not a simple connected graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range for order {n}")]
    BadVertex { vertex: usize, n: usize },

    #[error("terminal set is empty")]
    EmptySet,

    #[error("illegal parameters: {0}")]
    BadK(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource guard tripped: {0}")]
    TooLarge(String),

    #[error("malformed graph6 at byte {offset}: {reason}")]
    MalformedGraph6 { offset: usize, reason: String },

    #[error("bad family spec: {0}")]
    BadSpec(String),

    #[error("formula not available for family kind `{0}`")]
    UnsupportedKind(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error("serialization: {0}")]
    Serialization(String),
}

impl Error {
    pub(crate) fn bad_k(msg: impl Into<String>) -> Self {
        Error::BadK(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
