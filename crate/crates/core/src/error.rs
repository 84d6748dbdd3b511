use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. Each variant maps to a stable
/// machine-readable code (see [`Error::code`]) used by the CLI and FFI layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("iterate f_{index} is the zero polynomial")]
    ZeroIterate { index: usize },

    #[error("predicted size of {predicted} coefficient words exceeds the limit of {limit}")]
    ResourceLimit { predicted: u128, limit: u64 },

    #[error("constant polynomial is not a valid input here")]
    ConstantInput,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("polynomial does not belong to class {class}: {reason}")]
    ClassMismatch { class: String, reason: String },

    #[error("non-integral {what} at step {step}")]
    NonIntegral { what: String, step: usize },

    #[error("expansion is not specializable: first non-integral quotient at index {index}")]
    NonSpecializable { index: usize },

    #[error("orbit hits {value} at j = {index}")]
    OrbitViolation { index: usize, value: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("syntax error at position {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroDivisor => "ZERO_DIVISOR",
            Error::ZeroDenominator => "ZERO_DENOMINATOR",
            Error::ZeroIterate { .. } => "ZERO_ITERATE",
            Error::ResourceLimit { .. } => "RESOURCE_LIMIT",
            Error::ConstantInput => "CONSTANT_INPUT",
            Error::InvalidArgument(_) => "INVALID_ARGUMENT",
            Error::ClassMismatch { .. } => "CLASS_MISMATCH",
            Error::NonIntegral { .. } => "NON_INTEGRAL",
            Error::NonSpecializable { .. } => "NON_SPECIALIZABLE",
            Error::OrbitViolation { .. } => "ORBIT_VIOLATION",
            Error::Precondition(_) => "PRECONDITION",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::Internal(_) => "INTERNAL",
        }
    }

    /// True for errors caused by how the caller spelled the request rather
    /// than by the mathematics of the input.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::InvalidArgument(_))
    }
}
