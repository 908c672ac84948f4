use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("variable lists differ: {0:?} vs {1:?}")]
    VarMismatch(Vec<String>, Vec<String>),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operands live over different rings")]
    RingMismatch,
    #[error("invalid denominator set: {0}")]
    InvalidDenominator(String),
    #[error("`{0}` is not a unit of the ring")]
    NotAUnit(String),
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("connection is not integrable: {0}")]
    NotIntegrable(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("d^2 != 0 in degree {0}")]
    NotAComplex(i32),
    #[error("truncation cap exceeded: {0}")]
    CapExceeded(String),
    #[error("reduction stuck: {0}")]
    ReductionStuck(String),
    #[error("lift failed: {0}")]
    LiftFailed(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("{0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
