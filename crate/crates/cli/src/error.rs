use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] valcalc_core::Error),
    /// A consistency check failed; the details are already on stdout.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    /// 2 for bad input, 3 for an exceeded cap, 1 for a failed check.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(valcalc_core::Error::IterationCap(_)) => 3,
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}
