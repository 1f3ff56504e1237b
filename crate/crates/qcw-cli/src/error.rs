use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at {file}:{line}: {msg}")]
    Syntax { file: String, line: usize, msg: String },
    #[error("reference error at {file}:{line}: {msg}")]
    Reference { file: String, line: usize, msg: String },
    #[error("validation error at {file}:{line}: {msg}")]
    Validation { file: String, line: usize, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: qcw_core::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn syntax(file: &str, line: usize, msg: impl Into<String>) -> Self {
        Self::Syntax { file: file.into(), line, msg: msg.into() }
    }

    pub fn reference(file: &str, line: usize, msg: impl Into<String>) -> Self {
        Self::Reference { file: file.into(), line, msg: msg.into() }
    }

    pub fn validation(file: &str, line: usize, msg: impl Into<String>) -> Self {
        Self::Validation { file: file.into(), line, msg: msg.into() }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Self::Usage(msg.into())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Syntax { .. } => "SyntaxError",
            Self::Reference { .. } => "ReferenceError",
            Self::Validation { .. } => "ValidationError",
            Self::Usage(_) => "UsageError",
            Self::Core { .. } => "ComputationError",
            Self::Io { .. } => "IoError",
        }
    }
}

/// Wraps a core error with the command or object it came from.
pub trait Context<T> {
    fn context(self, what: impl FnOnce() -> String) -> Result<T, CliError>;
}

impl<T> Context<T> for qcw_core::Result<T> {
    fn context(self, what: impl FnOnce() -> String) -> Result<T, CliError> {
        self.map_err(|source| CliError::Core { context: what(), source })
    }
}
