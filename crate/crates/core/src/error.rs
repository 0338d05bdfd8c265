use thiserror::Error;

/// Errors raised by parsing, validation and the solver entry points.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),

    #[error("vertex `{vertex}` lists `{entry}` more than once")]
    DuplicateEntry { vertex: String, entry: String },

    #[error("vertex `{0}` lists itself")]
    SelfPreference(String),

    #[error("`{from}` lists `{to}` but `{to}` does not list `{from}`")]
    Asymmetric { from: String, to: String },

    #[error("declared vertex count {declared} but found {found} vertices")]
    VertexCount { declared: usize, found: usize },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("`{0}` and `{1}` are not adjacent")]
    NotAnEdge(String, String),

    #[error("vertex `{0}` is matched twice")]
    VertexMatchedTwice(String),

    #[error("edge ({0},{1}) belongs to the matching")]
    MatchingEdge(String, String),

    #[error("matching was built for {expected} vertices, instance has {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("enumeration bound exceeded: {edges} edges > {bound}")]
    BoundExceeded { edges: usize, bound: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("generator gave up after {0} rejected draws")]
    RejectionCap(u64),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
