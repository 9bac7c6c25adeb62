use thiserror::Error;

use crate::graph::{Edge, Vertex};

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("parallel edge {0}")]
    ParallelEdge(Edge),
    #[error("edge {0} must have a positive length")]
    NonPositiveWeight(Edge),
    #[error("edge {0} is not in the graph")]
    UnknownEdge(Edge),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("{s} and {t} are disconnected")]
    Disconnected { s: Vertex, t: Vertex },
    #[error("vertex {0} does not lie on the replacement path")]
    NotOnPath(Vertex),
    #[error("degenerate lower-bound parameter g = {0}: need g >= 3")]
    Degenerate(u32),
    #[error("cannot advance past path index {0}: the next edge alone exceeds the fault budget")]
    NoProgress(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
