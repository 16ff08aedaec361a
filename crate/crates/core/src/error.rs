use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("bracketing search did not converge: {0}")]
    NoConvergence(String),

    #[error("cubic discriminant {delta:e} is not positive inside the supported region")]
    NonPositiveDiscriminant { delta: f64 },

    #[error("root classification failed: {0}")]
    RootClassification(String),

    #[error("no sign change found: {0}")]
    NoSignChange(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("mesh error: {0}")]
    Mesh(String),

    #[error("weld mismatch: {0}")]
    WeldMismatch(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
