use serde_json::{json, Value};
use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] spangen_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Format(String),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io { .. } => "io",
            CliError::Json(_) => "json",
            CliError::Format(_) => "format",
            CliError::Usage(_) => "usage",
        }
    }

    /// 2 for anything the caller got wrong, 3 for numerical and resource
    /// trouble.
    pub fn exit_code(&self) -> i32 {
        use spangen_core::Error as E;
        match self {
            CliError::Core(
                E::Numerical { .. } | E::Resource(_) | E::Consistency(_) | E::InvariantViolation(_),
            ) => 3,
            CliError::Core(E::DegenerateModel(_)) => 3,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind(), "detail": self.to_string() } })
    }
}

macro_rules! format_err {
    ($($t:tt)*) => {
        $crate::error::CliError::Format(format!($($t)*))
    };
}
pub(crate) use format_err;
