use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// Root refinement failed to converge; carries the last iterate.
    #[error("numerical failure: {message} (residual {residual:e})")]
    Numerical {
        message: String,
        best: Vec<Complex64>,
        residual: f64,
    },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("graph generation failed: {0}")]
    Generation(String),

    #[error("infeasible key: lower degree bound {lower} exceeds vertex degree {degree}")]
    InfeasibleKey { lower: usize, degree: usize },

    #[error("key polynomial is identically zero")]
    ZeroKey,

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("degenerate model: {0}")]
    DegenerateModel(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Argument(_) => "argument",
            Error::Resource(_) => "resource",
            Error::Numerical { .. } => "numerical",
            Error::InvariantViolation(_) => "invariant",
            Error::Generation(_) => "generation",
            Error::InfeasibleKey { .. } => "infeasible_key",
            Error::ZeroKey => "zero_key",
            Error::Consistency(_) => "consistency",
            Error::DegenerateModel(_) => "degenerate_model",
            Error::Parse(_) => "parse",
        }
    }
}

macro_rules! bail_arg {
    ($($t:tt)*) => {
        return Err($crate::error::Error::Argument(alloc::format!($($t)*)))
    };
}
pub(crate) use bail_arg;
