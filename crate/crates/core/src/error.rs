use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {0} out of range 1..={1}")]
    OutOfRange(usize, usize),
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),
    #[error("graph has an isolated vertex (vertex {0})")]
    IsolatedVertex(usize),
    #[error("operation is undefined for a graph with no edges")]
    EmptyGraph,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ensemble weights must sum to 1 (off by {0:e})")]
    WeightError(f64),
    #[error("eigensolver did not converge within the sweep cap")]
    NoConvergence,
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("bad graph source: {0}")]
    SourceError(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("invalid configuration: {0}")]
    ConfigError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
