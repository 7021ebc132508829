//! Crate-wide error type.

use crate::word::BinaryWord;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid update order: {0}")]
    InvalidOrder(String),

    #[error("vertex function for v{vertex} has arity {arity}, expected {expected}")]
    ArityMismatch {
        vertex: usize,
        arity: usize,
        expected: usize,
    },

    #[error("vertex index {index} out of range 1..={n}")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("state has {got} coordinates, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },

    #[error("step count {k} out of range 0..={n}")]
    StepOutOfRange { k: usize, n: usize },

    #[error("{what}: budget exceeded: {detail}")]
    BudgetExceeded { what: &'static str, detail: String },

    #[error("vertex {0} is not in the graph")]
    UnknownVertex(String),

    #[error("{0} is not a vertex of the graph spec")]
    NotInVertexSet(BinaryWord),

    #[error("not a clique: {0}")]
    NotAClique(String),

    #[error(
        "prescription conflict at input {input}: already {existing}, rule for member {member} \
         (prefix length {prefix_len}) requires {requested}"
    )]
    PrescriptionConflict {
        input: BinaryWord,
        existing: u8,
        requested: u8,
        member: BinaryWord,
        prefix_len: usize,
    },

    #[error("lemma 3 precondition violated: {0}")]
    Lemma3Precondition(String),

    #[error("two nonadjacent vertices {x} and {y} are both 2-periodic; this contradicts the incompatibility lemma")]
    Lemma3Violated { x: BinaryWord, y: BinaryWord },

    #[error("empty code has no minimum distance")]
    EmptyCode,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
