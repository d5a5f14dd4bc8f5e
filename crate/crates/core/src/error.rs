use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative method failed to converge.
    #[error("numerical error: {message} (iterations={iterations}, residual={residual:e})")]
    Numerical {
        message: String,
        iterations: usize,
        residual: f64,
    },

    /// The integrated state exceeded the magnitude cap.
    #[error("integration error at t={last_valid_time}: {message}")]
    Integration {
        message: String,
        last_valid_time: f64,
    },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
