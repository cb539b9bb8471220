use thiserror::Error;

/// Errors raised by the numeric kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector has (near) zero norm")]
    ZeroNorm,
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector norm {0} is not within tolerance of 1")]
    NotUnitNorm(f64),
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
    #[error("angle {0} rad is outside (0, pi]")]
    AngleOutOfRange(f64),
    #[error("latitude {0} is outside [-90, 90]")]
    LatitudeOutOfRange(f64),
    #[error("longitude {0} is outside [-180, 360)")]
    LongitudeOutOfRange(f64),
    #[error("sample is empty")]
    EmptySample,
    #[error("need at least {needed} points, got {found}")]
    TooFewPoints { needed: usize, found: usize },
    #[error("delta {delta} is outside (0, {sup})")]
    DeltaOutOfRange { delta: f64, sup: f64 },
    #[error("no sample point lies within the delta-neighborhood")]
    EmptyNeighborhood,
    #[error("a locality radius delta is required")]
    MissingDelta,
    #[error("depth curves need circular data (q = 2), got q = {0}")]
    NotCircular(usize),
    #[error("grid size must be at least 8, got {0}")]
    GridTooSmall(usize),
    #[error("concentration must be positive, got {0}")]
    KappaNotPositive(f64),
    #[error("concentration must be non-negative and finite, got {0}")]
    InvalidKappa(f64),
    #[error("invalid mixture weights: {0}")]
    InvalidWeights(String),
    #[error("input is empty")]
    EmptyInput,
    #[error("invalid render options: {0}")]
    InvalidOptions(String),
}

pub type Result<T> = std::result::Result<T, Error>;
