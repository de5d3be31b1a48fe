use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input parameter failed validation.
    #[error("invalid `{field}`: {reason}")]
    Validation { field: &'static str, reason: String },

    /// The starting point is outside the open interval where the problem is posed.
    #[error("starting position x0 = {x0} must lie strictly inside (-1, 1)")]
    Domain { x0: f64 },

    /// A linear solve broke down or a run produced unusable output.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The time-stepper hit its horizon before the survival probability decayed.
    #[error(
        "reached t_max = {t_max} with S = {survival:.3e} still above the tail threshold \
         {s_tail:.1e}; increase t_max"
    )]
    Horizon {
        t_max: f64,
        survival: f64,
        s_tail: f64,
    },

    /// Writing an output table failed.
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// Process exit status for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation { .. } | Error::Domain { .. } => 2,
            Error::Numerical(_) | Error::Horizon { .. } => 3,
            Error::Io(_) => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Error {
    Error::Validation {
        field,
        reason: reason.into(),
    }
}

/// Rejects NaN and infinities.
pub(crate) fn finite(field: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(invalid(field, format!("must be finite, got {value}")))
    }
}
