use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid cluster: {0}")]
    InvalidCluster(String),
    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("divisors live on different clusters")]
    ClusterMismatch,
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("the zero ideal has no finite invariants")]
    ZeroIdeal,
    #[error("the unit ideal has infinite log-canonical threshold")]
    UnitIdeal,
    #[error("unsupported dimension {0}: Newton polyhedra are computed for at most 3 variables")]
    UnsupportedDimension(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("multiplicity system violates the proximity inequalities at point {0}")]
    NotProximityCompliant(usize),
    #[error("iteration cap of {0} exceeded")]
    IterationCap(usize),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("divisors live on different fans")]
    FanMismatch,
    #[error("divisor is not nef")]
    NotNef,
    #[error("continued fraction stream exhausted: requested {requested}, available {available}")]
    StreamExhausted { requested: usize, available: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
