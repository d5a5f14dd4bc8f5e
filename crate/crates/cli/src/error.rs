use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] caseiso::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    /// An output was produced but failed a post-run sanity check.
    #[error("{0}")]
    Consistency(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Core(caseiso::Error::Domain(_)) => "domain",
            CliError::Core(caseiso::Error::Numerical { .. }) => "numerical",
            CliError::Core(caseiso::Error::Integration { .. }) => "integration",
            CliError::Core(caseiso::Error::Parse { .. }) => "parse",
            CliError::Core(caseiso::Error::Io(_)) | CliError::Io { .. } => "io",
            CliError::Consistency(_) => "consistency",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    /// `error kind=<kind> message=<text>` on a single line.
    pub fn one_line(&self) -> String {
        let msg = self.to_string().replace(['\n', '\r'], " ");
        format!("error kind={} message={msg}", self.kind())
    }
}
