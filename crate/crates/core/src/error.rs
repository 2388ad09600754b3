use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("weight exponent mismatch: {left} vs {right}")]
    AlphaMismatch { left: f64, right: f64 },

    #[error("element is not in the polar family: {0}")]
    NotInPolarFamily(String),

    #[error("semigroup scalar {0} is not a positive real")]
    NonPositiveScalar(String),

    #[error("singular denominator at z = {0}")]
    SingularDenominator(String),

    #[error("cannot express operator in the weighted LFT family: {0}")]
    NotInFamily(String),

    #[error("eigensolver failure: {0}")]
    Eigen(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
