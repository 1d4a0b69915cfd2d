use crate::spec::SpecError;

#[derive(Debug, thiserror::Error)]
pub enum WorkbenchError {
    #[error("spec: {0}")]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Core(#[from] aca_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl WorkbenchError {
    pub fn usage(msg: impl Into<String>) -> Self {
        WorkbenchError::Usage(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, WorkbenchError::Core(e) if e.is_budget())
    }
}

pub type Result<T, E = WorkbenchError> = std::result::Result<T, E>;
