use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not Hermitian (asymmetry {asymmetry:e}, allowed {allowed:e})")]
    NotHermitian { asymmetry: f64, allowed: f64 },
    #[error("matrix is not positive definite (lambda_min/lambda_max = {margin:e})")]
    NotPositiveDefinite { margin: f64 },
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("no exact solution (residual {residual:e})")]
    NoExactSolution { residual: f64 },
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("vectors do not span the ambient space (lambda_min/lambda_max = {margin:e})")]
    NotAFrame { margin: f64 },
    #[error("generator is singular (smallest singular value {sigma_min:e})")]
    SingularGenerator { sigma_min: f64 },
    #[error("operator is singular (smallest singular value {sigma_min:e})")]
    SingularOperator { sigma_min: f64 },
    #[error("orbit does not close: ||T^M f0 - f0|| = {residual:e}")]
    NotCyclic { residual: f64 },
    #[error("obstruction analysis requires the cyclic index model")]
    WindowedModelUnsupported,
    #[error("exhaustive search over {size} elements exceeds the cap of {cap}; use random mode")]
    TooLarge { size: usize, cap: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("window vanishes at coordinate {index} (|g| = {magnitude:e})")]
    WindowVanishes { index: usize, magnitude: f64 },
    #[error("bands cover {covered} of {dim} frequencies; the result only spans a subspace")]
    BandsNotCovering { covered: usize, dim: usize },
    #[error("basis {index} is not unitary (deviation {deviation:e})")]
    NotUnitary { index: usize, deviation: f64 },
}

impl Error {
    /// Errors caused by malformed input rather than by the mathematics of
    /// a well-formed request.
    pub fn is_user_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidMatrix(_)
                | Error::DimensionMismatch(_)
                | Error::InvalidFrame(_)
                | Error::WindowedModelUnsupported
                | Error::TooLarge { .. }
                | Error::InvalidParams(_)
                | Error::BandsNotCovering { .. }
                | Error::NotUnitary { .. }
                | Error::WindowVanishes { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
