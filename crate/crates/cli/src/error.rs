use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] vqechem::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: invalid JSON: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("need at least {needed} points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },
    #[error("no interior minimum to bracket: {0}")]
    NoBracket(String),
    #[error("no interior maximum along the path")]
    NoBarrier,
    #[error("curves do not align: {0}")]
    Alignment(String),
    #[error("all {0} scan points failed")]
    ScanFailed(usize),
    #[error("{0}")]
    Usage(String),
}

pub(crate) fn read_to_string(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}
