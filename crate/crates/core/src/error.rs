use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient {n} requested beyond horizon {horizon}")]
    BeyondHorizon { n: usize, horizon: usize },
    #[error("derivative of a series with horizon 0")]
    ZeroHorizon,
    #[error("enclosure tolerance must be positive, got {0}")]
    NonPositiveEps(String),
    #[error("improper integral does not exist: {0}")]
    NonexistentLimit(String),
    #[error("denominator has a factor without rational roots (remaining degree {degree})")]
    IrreducibleFactor { degree: usize },
    #[error("invalid interval: lower end {lo} exceeds upper end {hi}")]
    InvalidInterval { lo: String, hi: String },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
