use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the domain an operation is defined on.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two classes or collections live on different ambient spaces.
    #[error("ambient mismatch: {left} vs {right}")]
    AmbientMismatch { left: String, right: String },

    #[error("mutation index {index} out of range for a collection of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    /// The Lefschetz data is not rectangular but the operation needs it to be.
    #[error("non-rectangular Lefschetz data: d = {d} does not divide m + 1 = {}", .m + 1)]
    NonRectangular { m: i64, d: i64 },

    #[error("unknown catalog entry `{0}`")]
    UnknownExample(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
