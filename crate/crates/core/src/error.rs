use thiserror::Error;

use crate::word::PrimedWord;

/// Errors raised by the core engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid diagram involution: {0}")]
    InvalidStar(String),
    #[error("unknown system name `{0}`")]
    UnknownSystem(String),
    #[error("generator {gen} out of range for rank {rank}")]
    GeneratorOutOfRange { gen: usize, rank: usize },
    #[error("parabolic subgroup {0} is infinite or exceeds the enumeration bound")]
    InfiniteParabolic(String),
    #[error("subset {0} is not invariant under the diagram involution")]
    NotStarInvariant(String),
    #[error("element is not a twisted involution")]
    NotTwistedInvolution,
    #[error("word {0} is not an involution word for the given element")]
    NotInvolutionWord(String),
    #[error("no exceptional relation list for type {0}")]
    UnknownType(String),
    #[error("closure exceeded the bound of {0} words")]
    ClosureBoundExceeded(usize),
    #[error("relation {kind} leads from {from} to {to}, which leaves the target set")]
    RelationEscapedSet { kind: String, from: PrimedWord, to: PrimedWord },
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("element is not an involution")]
    NotInvolution,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("atom search bound violated: found an atom of length {0} beyond the element length")]
    AtomBoundViolated(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = CoxeterError> = std::result::Result<T, E>;
