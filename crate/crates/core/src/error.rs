use thiserror::Error;

/// Failures reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rotation angle {0} outside the open interval (-pi/2, pi/2)")]
    AngleOutOfRange(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("basis size {got} too small, at least {need} required")]
    BasisTooSmall { got: usize, need: usize },
    #[error("basis too small to resolve the eigenfunction: relative tail mass {tail:e}")]
    InsufficientBasis { tail: f64 },
    #[error("eigenvalue iteration did not converge after {iterations} steps")]
    EigenNoConvergence { iterations: usize },
    #[error("singular value computation failed: {0}")]
    SvdFailure(String),
    #[error("shift {re} + {im}i is numerically singular")]
    SingularShift { re: f64, im: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
