use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index out of range: agent {agent}, item {item} (n = {n})")]
    IndexOutOfRange { agent: usize, item: usize, n: usize },

    #[error("not a perfect matching: {0}")]
    InvalidMatching(String),

    #[error("algorithm welfare {alg} exceeds optimum {opt}")]
    WelfareExceedsOptimum { opt: f64, alg: f64 },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("brute force limited to n <= {max}, got {n}")]
    TooLarge { n: usize, max: usize },

    #[error("graph must be undirected")]
    DirectedGraph,

    #[error("inconsistent oracle: {0}")]
    InconsistentOracle(String),

    #[error("ordinal algorithm issued a value query")]
    QueryForbidden,

    #[error("profile is not k-well-structured: {0}")]
    NotWellStructured(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("agent {agent} has no feasible incident edge")]
    NoFeasibleEdge { agent: usize },

    #[error("solver returned an infeasible solution: {0}")]
    InfeasibleSolution(String),

    #[error("query budget exceeded: agent {agent} used {used} queries, budget {budget}")]
    BudgetExceeded { agent: usize, used: usize, budget: usize },

    #[error("adversary construction failed: {0}")]
    Construction(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
