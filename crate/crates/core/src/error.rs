use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self loop on node {0}")]
    SelfLoop(u32),

    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(u32, u32),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown node id {0}")]
    UnknownNode(u32),

    #[error("eigenvalue {value:.6e} lies in the ambiguous band ({tol:.6e}, {upper:.6e}); null space is not cleanly separated")]
    ToleranceAmbiguity { value: f64, tol: f64, upper: f64 },

    #[error("basis search exhausted all columns with {found} of {expected} indicator vectors recovered")]
    BasisInconsistency { found: usize, expected: usize },

    #[error("graph is not connected (second eigenvalue {0:.6e} is within zero tolerance)")]
    NotConnected(f64),

    #[error("eigensolver residual did not reach tolerance within {0} operator applications")]
    NoConvergence(usize),

    #[error("dimension {dim} exceeds the dense eigendecomposition cap {cap}")]
    CapacityExceeded { dim: usize, cap: usize },

    #[error("removal budget {budget} must be smaller than the node count {nodes}")]
    BudgetExceedsNodes { budget: usize, nodes: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
