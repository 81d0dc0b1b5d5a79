use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] zhu_core::Error),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    /// Exit status for a run that stopped on this error.
    pub fn exit_code(&self) -> u8 {
        use zhu_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Io { .. } => 2,
            CliError::Core(e) => match e {
                E::Parse(_)
                | E::InvalidSpec(_)
                | E::Unsupported(_)
                | E::FactorsThrough { .. }
                | E::IrrationalSpectrum { .. } => 2,
                E::TruncationExceeded { .. } | E::DegreeMismatch { .. } => 3,
                // internal invariant failures; not part of the 0-3 contract
                E::DimensionMismatch { .. } | E::Containment => 70,
            },
        }
    }

    /// Remediation hint printed under the error, if there is an obvious one.
    pub fn hint(&self) -> Option<&'static str> {
        use zhu_core::Error as E;
        match self {
            CliError::Core(E::TruncationExceeded { .. }) => Some("raise --cutoff or --max-degree"),
            CliError::Core(E::DegreeMismatch { .. }) => Some("raise --max-degree"),
            CliError::Core(E::FactorsThrough { .. }) => Some("pass --regrade to induce and shift down"),
            CliError::Core(E::IrrationalSpectrum { .. }) => {
                Some("only matrices with rational eigenvalues are supported")
            }
            _ => None,
        }
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
