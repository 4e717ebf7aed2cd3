use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid surface parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("surface parameter mismatch: b = {left} vs b = {right}")]
    ParamMismatch { left: u32, right: u32 },

    #[error("exponent vector {0} is not torus-invariant (weight {1})")]
    NotInvariant(String, i64),

    #[error("field is not tangent to the threefold")]
    NotTangent,

    #[error("field is not torus-invariant")]
    NotInvariantField,

    #[error("field is not locally nilpotent within {bound} iterations")]
    NotNilpotent { bound: u32 },

    #[error("unsupported membership target: {0}")]
    UnsupportedTarget(String),

    #[error("point is not on the threefold: {0}")]
    NotOnSurface(String),

    #[error("malformed script: {0}")]
    MalformedScript(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}
