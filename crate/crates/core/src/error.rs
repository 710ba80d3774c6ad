use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The generating pairs close up to a reflexive pair; carries one cycle.
    #[error("cycle detected: {}", .0.join(" < "))]
    CycleDetected(Vec<String>),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("{what} = {value} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("not a strict order: {0}")]
    NotAStrictOrder(String),
    /// Input document does not match its schema; `path` points at the field.
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}
