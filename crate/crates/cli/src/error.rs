use thiserror::Error;

use fracspec_core::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("unknown experiment {0:?}; expected one of construct, dim, minkowski, fourier, mollify, tauberian")]
    UnknownExperiment(String),
    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: CoreError,
    },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad input (config, unknown id, invalid parameters), 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::UnknownExperiment(_) => 2,
            CliError::Core { source, .. } => match source {
                CoreError::Invalid(_) | CoreError::Parse { .. } | CoreError::Domain(_) => 2,
                _ => 1,
            },
            CliError::Io(_) => 1,
        }
    }
}

pub(crate) trait Context<T> {
    fn context(self, what: &str) -> Result<T, CliError>;
}

impl<T> Context<T> for Result<T, CoreError> {
    fn context(self, what: &str) -> Result<T, CliError> {
        self.map_err(|source| CliError::Core {
            context: what.to_string(),
            source,
        })
    }
}
