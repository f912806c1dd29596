use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,

    #[error("alphabet contains duplicate symbol '{0}'")]
    DuplicateSymbol(char),

    #[error("symbol '{0}' is not part of the alphabet")]
    UnknownSymbol(char),

    #[error("automata have different alphabets")]
    AlphabetMismatch,

    #[error("invalid automaton: {}", .0.join("; "))]
    InvalidDfa(Vec<String>),

    #[error("automaton is not connected")]
    Disconnected,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parameters ({0}, {1}) are not relatively prime; the tightness claim requires gcd = 1")]
    NotCoprime(usize, usize),

    #[error("bound not applicable: {0}")]
    Inapplicable(String),

    #[error("enumeration limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal disagreement: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
