use thiserror::Error;

/// Everything that stops a command, split by the exit code it maps to.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{location}: {message}")]
    Input { location: String, message: String },
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn input(location: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Input { location: location.into(), message: message.into() }
    }

    /// Wraps a core error raised while handling `location`.
    pub fn core(location: impl Into<String>, e: nlgate_core::Error) -> Self {
        use nlgate_core::Error as E;
        match e {
            E::Shape(m) | E::UnknownEntry(m) => CliError::input(location, m),
            E::Validation(m) | E::Precondition(m) => CliError::Verification(format!("{}: {m}", location.into())),
        }
    }

    /// 1 for verification failures, 2 for unusable input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            _ => 2,
        }
    }
}
