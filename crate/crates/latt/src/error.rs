use thiserror::Error;

/// Errors raised by lattice construction and the algebraic operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LattError {
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("poset is not a lattice: elements {0} and {1} have no {2}")]
    NotALattice(usize, usize, &'static str),
    #[error("poset has no bottom or top element")]
    Unbounded,
    #[error("size {0} exceeds the supported cap of {1}")]
    CapExceeded(usize, usize),
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(usize, usize),
    #[error("horizontal sum requires both summands to have at least 2 elements")]
    TrivialSummand,
    #[error("partition is not a congruence: {0}")]
    NotACongruence(String),
    #[error("the full congruence cannot be a horizontal-sum component")]
    FullCongruenceInHsum,
    #[error("bad elements for the swap complementation: {0}")]
    BadElements(String),
    #[error("congruence does not preserve the unary operation: {0}")]
    NotDeltaPreserving(String),
    #[error("element set is not a bounded sublattice")]
    NotASublattice,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, LattError>;
