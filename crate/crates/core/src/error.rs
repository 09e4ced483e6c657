use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("line {line}: {message}")]
    Table { line: u64, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("division by zero while evaluating {0}")]
    DivisionByZero(String),

    #[error("band index {index} out of range for a chain of {len} bands")]
    BandIndex { index: usize, len: usize },

    #[error("band {0} is not applicable to this surface")]
    NotApplicable(usize),

    #[error("region {region} is not applicable: edge {edge} would get a negative weight")]
    NegativeWeight { region: usize, edge: u32 },

    #[error("size bound exceeded: {what} is {actual}, bound is {bound}")]
    SizeBound {
        what: &'static str,
        actual: usize,
        bound: usize,
    },

    #[error("invalid embedding: {0}")]
    Embedding(String),

    #[error("theta-graph is empty")]
    EmptyTheta,

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Errors caused by malformed input rather than by a failed computation.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Table { .. } | Error::Io(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
