use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("not a Latin square: {0}")]
    NotLatinSquare(String),
    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element 0 is not the identity")]
    IdentityNotFirst,
    #[error("generator closure exceeds order cap {0}")]
    OrderCapExceeded(usize),
    #[error("index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("objects belong to different groups or pairs")]
    Mismatch,
    #[error("exponent p = {0} outside admissible range {1}")]
    BadExponent(f64, &'static str),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("pair ({0}) is not a Gelfand pair")]
    NotGelfand(String),
    #[error("simultaneous diagonalization failed: {0}")]
    Diagonalization(String),
    #[error("group order {order} exceeds PSD cap {cap}")]
    PsdCapExceeded { order: usize, cap: usize },
    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
