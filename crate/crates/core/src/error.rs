use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("denominator vanishes under substitution {binding}")]
    DenominatorVanishes { binding: String },
    #[error("not expandable as a power series: {0}")]
    NotExpandable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("Jacobi identity fails for ({i},{j},{k})")]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("singular matrix")]
    SingularMatrix,
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("unknown family: {0}")]
    UnknownFamily(String),
    #[error("unknown algebra: {0}")]
    UnknownAlgebra(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("fixed-prime formula rejected: {0}")]
    FixedPrime(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("no formula at p = {p}: {reason}")]
    NoFormula { p: u64, reason: String },
    #[error("convergence failure: {0}")]
    Convergence(String),
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
