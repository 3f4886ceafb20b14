use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("graph contains a triangle {0:?}")]
    NotTriangleFree([String; 3]),
    #[error("graph has {vertices} vertices, search budget is {budget}")]
    GraphTooLarge { vertices: usize, budget: usize },
    #[error("search deadline exceeded")]
    DeadlineExceeded,
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("no valid K5 subdivision supplied")]
    NoK5,
    #[error("input graph is planar")]
    PlanarInput,
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("branch too short: {0}")]
    BranchTooShort(String),
    #[error("embedding is not induced: {0}")]
    NotInduced(String),
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("self loop on `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge {0} -- {1}")]
    DuplicateEdge(String, String),
    #[error("bad generator parameters: {0}")]
    BadParams(String),
    #[error("schema version mismatch: expected {expected}, found {found}")]
    SchemaVersionMismatch { expected: String, found: String },
    #[error("document validation failed: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
