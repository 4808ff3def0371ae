use std::path::PathBuf;

use ellfib_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("{0}")]
    Usage(String),
    #[error("prediction and recomputation disagree at {0}")]
    Mismatch(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Manifest(_) | CliError::Usage(_) | CliError::Read { .. } => 2,
            CliError::Mismatch(_) => 4,
            CliError::Write { .. } => 1,
            CliError::Core(e) => match e {
                CoreError::Parse(_) | CoreError::BadInput(_) => 2,
                CoreError::SingularSurface | CoreError::NotOnSurface | CoreError::NotOnCurve => 3,
                CoreError::ConfigMismatch => 4,
                CoreError::TorsionGenerator | CoreError::EmbeddingInvalid | CoreError::SingularFiberCurve => 5,
                _ => 1,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_table() {
        assert_eq!(CliError::Core(CoreError::Parse("x".into())).exit_code(), 2);
        assert_eq!(CliError::Core(CoreError::SingularSurface).exit_code(), 3);
        assert_eq!(CliError::Core(CoreError::NotOnSurface).exit_code(), 3);
        assert_eq!(CliError::Mismatch("t=0".into()).exit_code(), 4);
        assert_eq!(CliError::Core(CoreError::TorsionGenerator).exit_code(), 5);
        assert_eq!(CliError::Core(CoreError::EmbeddingInvalid).exit_code(), 5);
    }
}
