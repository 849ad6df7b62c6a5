use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("p must be prime (got {0})")]
    InvalidPrime(u64),

    #[error("p must divide n (p = {p}, n = {n})")]
    DivisibilityViolation { p: u64, n: u64 },

    #[error("vertex {index} out of range for a graph with {vertex_count} vertices")]
    VertexOutOfRange { index: usize, vertex_count: usize },

    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    /// An exhaustive oracle refused to run because the input is above its size gate.
    #[error("size gate exceeded: {vertices} vertices > limit {limit}")]
    SizeGate { vertices: usize, limit: usize },

    #[error("not applicable: {0}")]
    NotApplicable(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
