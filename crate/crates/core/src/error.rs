use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("invalid epsilon: {0}")]
    InvalidEpsilon(String),
    #[error("cap exceeded: more than {cap} elements")]
    CapExceeded { cap: usize },
    #[error("infeasible order {0}: divisible by the characteristic")]
    InfeasibleOrder(String),
    #[error("infeasible recipe: {0}")]
    InfeasibleRecipe(String),
    #[error("order mismatch: claimed {claimed}, constructed element has order {actual}")]
    OrderMismatch { claimed: String, actual: String },
    #[error("matrix is not periodic with the given exponent bound")]
    NotPeriodic,
    #[error("matrix does not preserve the quadratic form")]
    NotOrthogonal,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid root: {0}")]
    InvalidRoot(String),
}

pub type Result<T> = std::result::Result<T, Error>;
