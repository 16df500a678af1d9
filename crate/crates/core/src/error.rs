use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalar ring mismatch: k = {left} vs k = {right}")]
    RingMismatch { left: u32, right: u32 },

    #[error("2^({exponent}) is not representable for k = {k}: denominator must divide {}", 2 * k)]
    Precision { k: u32, exponent: String },

    #[error("invalid mode {0}")]
    InvalidMode(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("bad module label `{0}`")]
    BadLabel(String),

    #[error("label {label} is not valid for k = {k}: {reason}")]
    LabelMismatch { label: String, k: u32, reason: String },

    #[error("inconsistent fusion closure at {triple}: {detail}")]
    Inconsistent { triple: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
