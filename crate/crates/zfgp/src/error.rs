use thiserror::Error;

/// Errors shared across the library. Solver refusals (cap exceeded) are
/// ordinary errors: callers must see them, not silently get a weaker answer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop edge at vertex {0} is not allowed")]
    LoopEdge(usize),

    #[error("graph on {n} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("graph is not a tree")]
    NotTree,

    #[error("graph is not unicyclic")]
    NotUnicyclic,

    #[error("graph is not a connected block graph")]
    NotBlockGraph,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertices {u} and {v} lie in different components")]
    DisconnectedPair { u: usize, v: usize },

    #[error("vertex {0} does not lie on the cycle")]
    NotOnCycle(usize),

    #[error("exact search refused: n = {n} exceeds cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("graph6 error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("random generator exhausted its retry budget for {0}")]
    RetryBudgetExhausted(String),

    #[error("trimmed form of a unicyclic graph is neither empty nor a partial sun")]
    TrimNotPartialSun,
}

pub type Result<T> = std::result::Result<T, GraphError>;
