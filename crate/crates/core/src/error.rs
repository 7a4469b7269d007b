//! Error type shared by the numerical modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("zero modulus: punctured-plane point or divisor at the origin")]
    ZeroModulus,

    #[error("bad range: {0}")]
    BadRange(String),

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("interpolation target outside grid support: {0}")]
    InterpolationOutOfRange(String),

    #[error("integral diverges on the grid: {0}")]
    Divergent(String),

    #[error("fiducial is not admissible: {0}")]
    NotAdmissible(String),

    #[error("weight is distributional; use the closed-form path")]
    DistributionalWeight,

    #[error("quadrature did not converge: {0}")]
    QuadratureNotConverged(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("matrix is not Hermitian (residual {0:.3e})")]
    NotHermitian(f64),

    #[error("field is not in L1 on the grid")]
    NotL1,

    #[error("alpha too small: {0}")]
    AlphaTooSmall(String),

    #[error("regularization did not converge: {0}")]
    RegularizationNotConverged(String),

    #[error("fiducial choice violated: {0}")]
    ChoiceViolated(String),

    #[error("unsupported for distributional weight: {0}")]
    UnsupportedForDistributionalWeight(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
