use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Validation(String),
    #[error("individual {id} does not have the common set of time indices")]
    UnbalancedPanel { id: String },
    #[error("no prediction row for individual {id}")]
    MissingPrediction { id: String },
    #[error("row {row}, column {col}: not a number")]
    NonNumericCell { row: usize, col: String },
    #[error("unknown table {0}; expected T1..T6 or A7..A16")]
    UnknownTable(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] panel_msfe::error::Error),
}

impl CliError {
    /// Stable, machine-readable name of the failure.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "ParseError",
            CliError::Validation(_) => "ValidationError",
            CliError::UnbalancedPanel { .. } => "UnbalancedPanel",
            CliError::MissingPrediction { .. } => "MissingPrediction",
            CliError::NonNumericCell { .. } => "NonNumericCell",
            CliError::UnknownTable(_) => "UnknownTable",
            CliError::Io { .. } => "IoError",
            CliError::Csv(_) => "CsvError",
            CliError::Core(e) => e.code(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
