use thiserror::Error;

#[derive(Debug, Error)]
pub enum HomeoError {
    #[error("invalid piecewise-linear map: {0}")]
    InvalidPl(String),

    #[error("invalid möbius data: {0}")]
    InvalidMobius(String),

    #[error("cannot compose {lhs} with {rhs} exactly; use compose_tol to allow a sampled approximation")]
    BackendMix {
        lhs: &'static str,
        rhs: &'static str,
    },

    #[error("certification failed: {0}")]
    Uncertifiable(String),

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, HomeoError>;
