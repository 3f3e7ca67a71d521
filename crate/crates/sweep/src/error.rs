use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("invalid `{field}`: {message}")]
    Config {
        field: &'static str,
        message: String,
    },
    #[error("cannot parse config file {path}: {message}")]
    ConfigFile { path: PathBuf, message: String },
    #[error("unknown figure preset `{0}` (expected fig1, fig3, fig4, fig5 or fig6)")]
    UnknownPreset(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Core(#[from] lipkin_core::Error),
}

impl SweepError {
    pub(crate) fn config(field: &'static str, message: impl Into<String>) -> Self {
        SweepError::Config {
            field,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, SweepError>;
