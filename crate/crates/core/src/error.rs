use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("p-adic norm of zero requested from the nonzero variant")]
    ZeroInput,
    #[error("digit {digit} out of range for p = {p}")]
    DigitOutOfRange { digit: u32, p: u32 },
    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u32, right: u32 },
    #[error("refinement level {level} is below the function's depth {required}")]
    RefineLevel { level: usize, required: usize },
    #[error("resolution exceeded: word of length {requested} on a tree of depth {depth}")]
    Resolution { requested: usize, depth: usize },
    #[error("truncation degree {degree} is below the word length {required}")]
    Truncation { degree: usize, required: usize },
    #[error("cascade violation at node \"{word}\": node value {expected}, children sum {got}")]
    CascadeViolation {
        word: String,
        expected: String,
        got: String,
    },
    #[error("cascade tree is missing node \"{0}\"")]
    MissingNode(String),
    #[error("parameter t = {0} must lie strictly between 0 and 1")]
    ParameterOutOfRange(String),
    #[error("invalid {field}: {message}")]
    Parse { field: String, message: String },
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}
