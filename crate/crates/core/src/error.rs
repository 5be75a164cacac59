use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("truncation level mismatch: {left} vs {right}")]
    LevelMismatch { left: usize, right: usize },

    #[error("expected zero scalar coefficient, found {0}")]
    NonZeroScalar(f64),

    #[error("expected unit scalar coefficient, found {0}")]
    NonUnitScalar(f64),

    #[error("level {level} outside 0..={max}")]
    LevelOutOfRange { level: usize, max: usize },

    #[error("letter {letter} outside 1..={dim}")]
    LetterOutOfRange { letter: usize, dim: usize },

    #[error("dimension must be positive")]
    ZeroDimension,

    #[error("horizon must be positive and finite, got {0}")]
    InvalidHorizon(f64),

    #[error("invalid time grid: {0}")]
    InvalidTimes(String),

    #[error("path must start at the origin")]
    NotAtOrigin,

    #[error("invalid interval [{s}, {t}]")]
    InvalidInterval { s: f64, t: f64 },

    #[error("p-variation exponent must be >= 1, got {0}")]
    InvalidExponent(f64),

    #[error("mesh is not sorted within [0, T]")]
    UnsortedMesh,

    #[error("segments {index} and {next} are not orthogonal", next = index + 1)]
    NotOrthogonal { index: usize },

    #[error("segment {0} is zero")]
    ZeroSegment(usize),

    #[error("incompatible path classes: {0}")]
    ContextMismatch(String),

    #[error("direction constraint violated: {0}")]
    DirectionConstraint(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
