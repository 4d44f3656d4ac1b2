use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// `x` coincides with an excluded value `m·x ∈ ℤ`, `m ≤ n`.
    #[error("x = {x} is not admissible for n = {n}: {m}·x is an integer")]
    Inadmissible { x: String, n: usize, m: usize },

    #[error("vertex structure changes inside the interval: {0}")]
    StructuralInstability(String),

    #[error("point is not in the momentum polytope: {0}")]
    NotInPolytope(String),

    #[error("point is not regular: {0}")]
    NotRegular(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("ambiguous eigenvalue clustering: {0}")]
    Ambiguous(String),

    #[error("unsupported pattern: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
