use thiserror::Error;

/// Errors raised by the tensor, chart and verification layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension {0} outside supported range 4..=8")]
    DimensionOutOfRange(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("symmetry flag violated: {0}")]
    FlagViolation(String),

    #[error("trace consistency violated: residual {residual:.3e} exceeds {tolerance:.3e}")]
    TraceInconsistent { residual: f64, tolerance: f64 },

    #[error("input is not tracefree: trace {0:.3e}")]
    NotTracefree(f64),

    #[error("metric is singular or not positive definite at grid point {0}")]
    SingularMetric(usize),

    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("theta = 1 is a singular point of the coefficient")]
    ThetaSingular,

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("excised fraction {fraction:.3} exceeds bound {bound:.3}")]
    ExcisionTooLarge { fraction: f64, bound: f64 },

    #[error("zero denominator in {0}")]
    ZeroDenominator(&'static str),

    #[error("no analytic oracle for this geometry")]
    MissingOracle,
}

pub type Result<T> = std::result::Result<T, Error>;
