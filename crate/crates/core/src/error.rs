use thiserror::Error;

/// Errors produced by the numerical kernels and solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} did not converge within {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("adaptive quadrature stalled on [{a}, {b}] after {evaluations} evaluations")]
    QuadratureFailure { a: f64, b: f64, evaluations: usize },

    #[error("inadmissible exponents: {0}")]
    InadmissibleExponents(String),

    #[error("dimension N={n} must exceed p={p}")]
    DimensionTooSmall { n: usize, p: f64 },

    #[error("grid dimension {grid} does not match exponent dimension {exponents}")]
    DimensionMismatch { grid: usize, exponents: usize },

    #[error("bump function has vanishing L^p mass on this grid")]
    DegenerateBump,

    #[error("no negative-energy endpoint found along the search direction (last scale {scale:e})")]
    GeometryFailure { scale: f64 },

    #[error("malformed solution file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
