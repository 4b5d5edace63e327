use coxword_core::CoxeterError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoxeterError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    /// Whether the error comes from bad input rather than from a computation.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            HarnessError::UnknownSuite(_)
                | HarnessError::Usage(_)
                | HarnessError::Core(
                    CoxeterError::UnknownSystem(_)
                        | CoxeterError::Parse(_)
                        | CoxeterError::InvalidWindow(_)
                        | CoxeterError::GeneratorOutOfRange { .. }
                        | CoxeterError::NotTwistedInvolution
                        | CoxeterError::NotInvolution
                        | CoxeterError::InvalidMatrix(_)
                        | CoxeterError::InvalidStar(_)
                )
        )
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
