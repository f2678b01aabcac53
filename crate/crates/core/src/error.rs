use thiserror::Error;

/// Errors raised by the symbolic and numerical engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Text did not match a grammar. `position` is a byte offset into `input`.
    #[error("parse error at position {position} in {input:?}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },
    /// A structurally valid value violates a documented invariant.
    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },
    /// Malformed JSON (position is reported by the JSON reader).
    #[error("json: {0}")]
    Json(String),
    /// The inputs are well formed but outside an operation's domain.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A construction was requested whose hypothesis fails.
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(input: &str, position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            position,
            message: message.into(),
        }
    }

    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }

    /// True for errors caused by malformed input rather than domain violations.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::Validation { .. } | Error::Json(_) | Error::Io(_)
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
