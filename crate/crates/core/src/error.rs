use thiserror::Error;

use crate::triangulation::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid vertex token {0:?}")]
    BadToken(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("edges {0} and {1} do not lie in a common face")]
    NoCommonFace(String, String),

    #[error("triangulation is not a closed surface:\n{0}")]
    InvalidSurface(ValidationReport),

    #[error("link of {0} is not a single cycle")]
    BadLink(String),

    #[error("invalid z-orientation: {0}")]
    BadOrientation(String),

    #[error("z-orientation is not homogeneous")]
    NotHomogeneous,

    #[error("invalid directed embedding: {0}")]
    InvalidEmbedding(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("incompatible gluing sites: {0}")]
    Incompatible(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("too many zigzags to enumerate all orientations ({0} > 20)")]
    TooManyZigzags(usize),

    /// A structural guarantee that should always hold was violated.
    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn internal(message: impl Into<String>) -> Self {
        Error::Internal(message.into())
    }
}
