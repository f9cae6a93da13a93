use thiserror::Error;

use crate::graph::{Edge, Vertex};

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),

    #[error("duplicate edge ({}, {})", .0.0, .0.1)]
    DuplicateEdge(Edge),

    #[error("edge ({}, {}) is not in the host graph", .0.0, .0.1)]
    NotHostEdge(Edge),

    #[error("malformed graph file at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is not bipartite under the given coloring: edge ({}, {}) joins one side", .0.0, .0.1)]
    NotBipartite(Edge),

    #[error("exact oracle too large: component with {vertices} vertices exceeds cap of {cap}")]
    OracleTooLarge { vertices: usize, cap: usize },

    #[error("edge order is not a permutation of the host edges: {0}")]
    BadEdgeOrder(String),

    #[error("EDCS parameters differ: ({0}, {1}) vs ({2}, {3})")]
    ParamsMismatch(u64, u64, u64, u64),

    #[error("vertex {vertex} has degree {degree} < delta/3 (delta = {delta})")]
    LowDegree {
        vertex: Vertex,
        degree: usize,
        delta: usize,
    },
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
