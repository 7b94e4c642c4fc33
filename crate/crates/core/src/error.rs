use thiserror::Error;

use crate::synthesis::Unrealizable;

/// Errors raised by the library. Negative mathematical verdicts (a loop that
/// is not skew, a vector outside a cone) are ordinary return values; only
/// malformed input and failed constructions end up here.
#[derive(Debug, Error)]
pub enum Error<T = f64> {
    #[error("vector has no coordinates")]
    EmptyVector,
    #[error("non-finite value in input")]
    NonFinite,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {found} is below the required {required}")]
    DimensionTooSmall { required: usize, found: usize },
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("need at least {required} samples, got {found}")]
    TooFewSamples { required: usize, found: usize },
    #[error("invalid parameter list: {0}")]
    InvalidParams(&'static str),
    #[error("immersion failure at sample {index}: step below tolerance")]
    Immersion { index: usize },
    #[error("zero vector where a non-zero one is required")]
    ZeroVector,
    #[error("direction set is not full: rank {rank} in dimension {dim}")]
    NotFull { rank: usize, dim: usize },
    #[error("lattice generators are linearly dependent")]
    DependentGenerators,
    #[error("lattice has rank {rank}, need full rank {dim}")]
    RankDeficientLattice { rank: usize, dim: usize },
    #[error("no admissible class within search radius {radius}")]
    ClassNotFound { radius: usize },
    #[error("displacement is not a lattice element (off by {offset:e})")]
    NotALoop { offset: f64 },
    #[error("sample {index} is not inside the open hemisphere about the pole")]
    OutOfHemisphere { index: usize },
    #[error("projected boundary polygon is not simple")]
    NotSimple,
    #[error("linear program exceeded the pivot limit")]
    PivotLimit,
    #[error("invalid tolerance `{0}`: must be positive and finite")]
    InvalidTolerance(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not realizable: {0}")]
    NotRealizable(Box<Unrealizable<T>>),
}
