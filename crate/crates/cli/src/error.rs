use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] surfgrp::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Instance { line: usize, msg: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 invalid input, 3 cap breach, 4 internal defect.
    pub fn exit_code(&self) -> i32 {
        use surfgrp::Error as E;
        match self {
            CliError::Core(E::CapExceeded { .. }) => 3,
            CliError::Core(E::Defect(_) | E::CompletionFailure(_)) => 4,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
