use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    Structure(String),

    #[error("invalid model: {0}")]
    Model(String),

    #[error("node {node} out of range for a graph on {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("graph has {n} nodes, above the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("round {t} outside the recorded trace (0..={last})")]
    RoundOutOfRange { t: usize, last: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
