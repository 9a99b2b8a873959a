use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// A modular rank disagreed with the exact rank. This is a bug, never
    /// a property of the input.
    #[error("internal rank inconsistency: exact rank {exact}, rank {modular} modulo {prime}")]
    InconsistentRank {
        exact: usize,
        modular: usize,
        prime: String,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("multidegree selects no factor")]
    EmptyProjection,

    #[error("map for factor {0} is singular")]
    SingularMap(usize),

    #[error("not a permutation of 0..{0}")]
    BadPermutation(usize),

    #[error("expected {expected} points, got {got}")]
    WrongCardinality { expected: usize, got: usize },

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
