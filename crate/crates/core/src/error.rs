use thiserror::Error;

/// Errors raised by the group engine and the verification harness.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("closure exceeded the element cap of {cap} (reached {partial} elements)")]
    CapExceeded { cap: usize, partial: usize },

    #[error("no generators supplied")]
    NoGenerators,

    #[error("element is not a member of the group")]
    NotInGroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("the trivial group is not allowed here")]
    TrivialGroup,

    #[error("unknown group name: {0}")]
    UnknownGroup(String),

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("index out of range: {0}")]
    IndexOutOfRange(usize),

    #[error("character table construction failed: {0}")]
    CharacterTable(String),

    #[error("non-integral value: {0}")]
    NonIntegral(String),

    #[error("missing defining characteristic for Lie-type entry {0}")]
    MissingCharacteristic(String),

    #[error("{name}: expected order {expected}, generated {actual}")]
    OrderMismatch {
        name: String,
        expected: u64,
        actual: u64,
    },

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
