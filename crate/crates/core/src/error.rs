use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("coefficient {value} is not representable in {field}")]
    NotRepresentable { value: String, field: String },

    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },

    #[error("{count} variables requested, at most {max} supported")]
    TooManyVariables { count: usize, max: usize },

    #[error("{modulus} is not a prime")]
    NotPrime { modulus: u64 },

    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("{cap} exceeded (limit {limit}) while {context}")]
    LimitExceeded {
        cap: &'static str,
        limit: usize,
        context: String,
    },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("empty generator list")]
    EmptyList,

    #[error("ideal is not monomial: {0}")]
    NotMonomial(String),

    #[error("index {index} outside the computed window (length {len})")]
    OutOfWindow { index: usize, len: usize },

    #[error("declared minimal primes failed check `{check}`: {detail}")]
    DeclaredPrimes {
        /// Index of the offending prime, when a single one is at fault.
        prime: Option<usize>,
        check: &'static str,
        detail: String,
    },

    #[error("inconsistent prime data: {0}")]
    InconsistentPrimes(String),

    #[error("degree bound {bound} is below a presentation degree {degree}; results would be uncertified")]
    BoundTooSmall { bound: i32, degree: i32 },

    #[error("invalid instance: {0}")]
    Instance(String),

    #[error("dimension mismatch: {0}")]
    Shape(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    /// Exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::LimitExceeded { .. } => 2,
            Error::BoundTooSmall { .. } => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
