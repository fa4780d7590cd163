use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series division by a series with zero constant term")]
    ZeroConstantDivisor,
    #[error("series composition requires an inner series with zero constant term")]
    NonzeroInnerConstant,
    #[error("series has a nonzero constant term and is not divisible by t")]
    NotDivisibleByT,
    #[error("{word:?} is not a position of the {game} game")]
    NotAPosition { game: String, word: String },
    #[error("{what} {value} exceeds the enumeration guard {guard}")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        guard: usize,
    },
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("factor type {factor} is not valid for the {game} game")]
    InvalidFactorType { game: String, factor: String },
    #[error("{0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("routes disagree: {0}")]
    RouteMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}
