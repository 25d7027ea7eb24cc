use thiserror::Error;

#[derive(Debug, Error)]
pub enum CwError {
    #[error("invalid orbit configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown label {0}")]
    UnknownLabel(u32),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("realization error: {0}")]
    Realize(String),

    #[error("homeomorphisms inconsistent with configuration: {0}")]
    Inconsistent(String),

    #[error("maximality not certified: {0}")]
    NotMaximal(String),

    #[error("{0}")]
    Domain(String),

    #[error(transparent)]
    Homeo(#[from] homeo_core::HomeoError),
}

pub type Result<T> = std::result::Result<T, CwError>;
