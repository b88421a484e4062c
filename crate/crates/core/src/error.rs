use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) closes a cycle")]
    Cyclic(usize, usize),
    #[error("edge set is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("tree has no interior vertex (every vertex has degree 1)")]
    NoInterior,
    #[error("tree has no boundary vertex")]
    NoBoundary,

    #[error("degree sequence entry must be positive")]
    ZeroDegree,
    #[error("not a tree sequence: {0}")]
    NotTreeSequence(String),
    #[error("sequence length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("majorization precondition fails at rank {rank}")]
    NotMajorized { rank: usize },
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("function vanishes identically")]
    ZeroDenominator,
    #[error("length of function ({got}) does not match vertex count ({n})")]
    FunctionLength { got: usize, n: usize },
    #[error("eigensolver did not converge (residual {residual:e} after {iterations} iterations)")]
    Convergence { residual: f64, iterations: usize },
    #[error("tolerance must be positive and finite")]
    BadTolerance,

    #[error("infeasible class parameters: {0}")]
    Infeasible(String),
    #[error("enumeration cap exceeded: n = {n} > cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
