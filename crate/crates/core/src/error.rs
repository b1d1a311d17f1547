use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operator side {side} does not match dimA·dimB = {dim_a}·{dim_b}")]
    DimensionMismatch {
        side: usize,
        dim_a: usize,
        dim_b: usize,
    },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("local dimensions must be positive")]
    ZeroDimension,
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("operator is not Hermitian (max |A − A†| = {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("vector is not normalised (norm = {norm})")]
    NotNormalized { norm: f64 },
    #[error("vector length {len} does not match dimension {expected}")]
    VectorLength { len: usize, expected: usize },
    #[error("trace {trace} is not 1")]
    NotUnitTrace { trace: f64 },
    #[error("state parameter a = {0} must lie strictly inside (0, 1)")]
    ParameterOutOfRange(f64),
    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("invalid optimizer config: {0}")]
    InvalidConfig(&'static str),
    #[error("product minimum ε = {0:e} gives no detection margin")]
    NonPositiveEpsilon(f64),
}
