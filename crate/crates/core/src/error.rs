use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// The divisor ball contains zero. Callers typically respond by subdividing.
    #[error("divisor ball contains zero")]
    DivisorContainsZero,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("argument ball contains the pole of zeta at s = 1")]
    PoleAtOne,

    #[error("Euler-Maclaurin remainder {remainder:e} exceeds cap {cap:e} (N = {n})")]
    InsufficientN { n: u64, remainder: f64, cap: f64 },

    #[error("limit {requested} exceeds configured maximum {max}")]
    LimitTooLarge { requested: u64, max: u64 },

    #[error("cutoff {cutoff} is below the minimum {min}")]
    CutoffTooSmall { cutoff: u64, min: u64 },

    #[error("evaluation budget exhausted after {evals} evaluations (achieved width {width:e})")]
    BudgetExceeded { evals: u64, width: f64 },

    #[error("bisection depth {depth} exceeded without a certificate")]
    DepthExceeded { depth: u32 },

    #[error("invalid plan: {0}")]
    InvalidPlan(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
