use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: invalid JSON: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("schema violation at `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error("{path}: invalid config file: {source}")]
    Config {
        path: PathBuf,
        #[source]
        source: toml::de::Error,
    },
    #[error(transparent)]
    Core(#[from] ewit_core::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 1 for failed checks and numerical errors, 2 for bad invocations and
    /// unreadable or malformed inputs.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) | CliError::Core(_) => 1,
            CliError::Usage(_)
            | CliError::Io { .. }
            | CliError::Json { .. }
            | CliError::Schema { .. }
            | CliError::Config { .. } => 2,
        }
    }

    pub(crate) fn schema(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Schema {
            field: field.into(),
            message: message.into(),
        }
    }
}
