use thiserror::Error;

/// Errors raised by the library.
///
/// Validation failures on user-supplied parameters are distinguished from
/// internal verification failures so that front ends can map them onto
/// different exit codes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid signed partition: {0}")]
    InvalidSignedPartition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("parameters out of range: {0}")]
    OutOfRange(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("no sign assignment reaches signature ({p},{q}): {reason}")]
    NoSignAssignment { p: usize, q: usize, reason: String },

    #[error("invalid representation label: {0}")]
    InvalidLabel(String),

    #[error("group metadata mismatch: {0}")]
    GroupMismatch(String),

    #[error("not a character: {0}")]
    NotACharacter(String),

    #[error("freeness over S(p') fails: negative coefficient in degree {degree}")]
    FreenessViolated { degree: usize },

    #[error("combinatorial blow-up: {0}")]
    TooLarge(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("ambiguous numerical rank: {0}")]
    AmbiguousRank(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// True for errors caused by the caller's parameters rather than by a
    /// failed internal cross-check.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::Verification(_) | Error::AmbiguousRank(_) | Error::FreenessViolated { .. } | Error::NotACharacter(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
