use std::path::PathBuf;

use thiserror::Error;

/// A spec-file problem, located at the offending line when there is one.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{}`{key}`: {message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct SpecError {
    pub line: Option<usize>,
    pub key: String,
    pub message: String,
}

impl SpecError {
    pub fn new(line: Option<usize>, key: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            line,
            key: key.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Spec { path: PathBuf, source: SpecError },

    #[error("{}: {message}", path.display())]
    Input { path: PathBuf, message: String },

    #[error(transparent)]
    Core(#[from] timebin_core::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    /// One or more reproduction checks missed their tolerance.
    #[error("{0}")]
    Check(String),
}

impl CliError {
    /// Process exit status: 1 for usage and configuration problems, 2 for
    /// failures while running.
    pub fn exit_code(&self) -> i32 {
        use timebin_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Spec { .. } | CliError::Input { .. } => 1,
            CliError::Core(E::Config { .. } | E::Argument(_)) => 1,
            CliError::Core(_) | CliError::Io { .. } | CliError::Check(_) => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}
