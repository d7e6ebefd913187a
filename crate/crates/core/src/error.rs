use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma pole encountered: {0}")]
    Pole(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("product exceeds degree one in gamma or ln 2")]
    DegreeOverflow,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("coefficient at s = {s} is undetermined and cannot be consumed")]
    Undetermined { s: usize },
    #[error("cancellation failure: {0}")]
    Cancellation(String),
    #[error("recursion check failed: {0}")]
    Recursion(String),
    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e} after {evaluations} evaluations")]
    Quadrature {
        estimate: f64,
        error: f64,
        evaluations: usize,
    },
    #[error("tail bound unavailable: {0}")]
    TailBound(String),
    #[error("design matrix is rank deficient (rank {rank} of {columns})")]
    RankDeficient { rank: usize, columns: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("missing derivative of order {0}")]
    MissingDerivative(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
