//! Error type shared across the engine.

use thiserror::Error;

use crate::ring::Ring;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("differential composite is nonzero between degrees {upper} and {}", upper - 2)]
    DifferentialSquare { upper: i64 },

    #[error("map does not commute with the differentials at degree {degree}")]
    NotChainMap { degree: i64 },

    #[error("simplicial identity fails: {0}")]
    SimplicialIdentity(String),

    #[error("cosimplicial identity fails: {0}")]
    CosimplicialIdentity(String),

    #[error("category law fails: {0}")]
    CategoryLaw(String),

    #[error("diagram is not a functor:\n{}", crate::category::render_violations(.0))]
    InvalidDiagram(Vec<crate::category::Violation>),

    #[error("homology of the simplicial set has torsion in degree {degree}")]
    NonFreeHomology { degree: i64 },

    #[error("requested level {requested} exceeds truncation {max}")]
    TruncationExceeded { requested: usize, max: usize },

    #[error("truncation {have} is too small for the window; need at least {needed}")]
    InsufficientTruncation { needed: usize, have: usize },

    #[error("cannot certify finite antidiagonals: {0}")]
    InfiniteAntidiagonal(String),

    #[error("index category has loops: {0}")]
    LoopsInIndexCategory(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
}

impl Error {
    /// Coarse classification used by the command-line front end: inputs that
    /// fail validation versus computations whose preconditions fail.
    pub fn is_precondition_failure(&self) -> bool {
        matches!(
            self,
            Error::NonFreeHomology { .. }
                | Error::TruncationExceeded { .. }
                | Error::InsufficientTruncation { .. }
                | Error::InfiniteAntidiagonal(_)
                | Error::LoopsInIndexCategory(_)
        )
    }
}
