use std::path::PathBuf;

/// Failures of the experiment harness and its file formats.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The experiment configuration is malformed.
    #[error("config: {0}")]
    Config(String),

    /// A model, solver or policy error.
    #[error(transparent)]
    Core(#[from] budget_bandit_core::Error),

    /// Reading or writing a file failed.
    #[error("{}: {source}", path.display())]
    Io {
        /// File involved.
        path: PathBuf,
        /// Underlying error.
        source: std::io::Error,
    },

    /// A results file does not follow the CSV schema.
    #[error("{}:{line}: {message}", path.display())]
    Csv {
        /// File involved.
        path: PathBuf,
        /// 1-based line number.
        line: usize,
        /// What is wrong.
        message: String,
    },

    /// Rows cannot be written or aggregated.
    #[error("{0}")]
    Results(String),
}

/// Result alias for the harness.
pub type Result<T, E = Error> = std::result::Result<T, E>;
