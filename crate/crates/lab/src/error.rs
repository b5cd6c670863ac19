use std::fmt::Display;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("resource guard: {0}")]
    Resource(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl LabError {
    pub fn config(e: impl Display) -> Self {
        Self::Config(e.to_string())
    }

    pub fn numeric(e: impl Display) -> Self {
        Self::Numeric(e.to_string())
    }

    /// Process exit status: 2 config, 3 numeric, 4 resource guard, 1 IO.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            Self::Numeric(_) => 3,
            Self::Resource(_) => 4,
            Self::Io(_) => 1,
        }
    }
}

pub type LabResult<T> = Result<T, LabError>;
