//! Resolvent norms of a truncation, `||(H - z)^{-1}|| = 1 / sigma_min(H - z)`.

use num_complex::Complex;

use crate::error::Result;
use crate::linalg::{svd, BlockBand};
use crate::operators::TruncatedOperator;
use crate::scalar::Real;

/// Shifts whose smallest singular value falls below this multiple of
/// `||H||_2` are treated as eigenvalues and reported as `+inf`.
pub const SINGULAR_RELATIVE: f64 = 1e-14;

/// A truncation prepared for repeated resolvent evaluations.
///
/// The matrix is split into its decoupled band blocks once; each shift then
/// costs a banded QR and a short Lanczos run per block.
#[derive(Clone, Debug)]
pub struct Resolvent<T> {
    blocks: BlockBand<T>,
    norm: T,
}

impl<T: Real> Resolvent<T> {
    pub fn new(op: &TruncatedOperator<T>) -> Self {
        let blocks = op.block_band();
        let norm = blocks.norm2();
        Resolvent { blocks, norm }
    }

    /// `||H||_2`.
    pub fn operator_norm(&self) -> T {
        self.norm
    }

    /// `sigma_min(H - z)`.
    pub fn sigma_min(&self, z: Complex<T>) -> T {
        self.blocks.sigma_min_shifted(z)
    }

    /// `||(H - z)^{-1}||`, `+inf` at numerically singular shifts.
    pub fn norm(&self, z: Complex<T>) -> T {
        sentinel(self.sigma_min(z), self.norm)
    }
}

fn sentinel<T: Real>(sigma: T, norm: T) -> T {
    if !(sigma >= T::lit(SINGULAR_RELATIVE) * norm) || sigma == T::zero() {
        T::infinity()
    } else {
        T::one() / sigma
    }
}

/// `||(H - z)^{-1}||` of a truncation, `+inf` at numerically singular shifts.
pub fn resolvent_norm<T: Real>(op: &TruncatedOperator<T>, z: Complex<T>) -> Result<T> {
    Ok(Resolvent::new(op).norm(z))
}

/// Same quantity from a full dense SVD of `H - z`. Slow; kept as the
/// reference the banded path is tested against.
pub fn resolvent_norm_dense<T: Real>(op: &TruncatedOperator<T>, z: Complex<T>) -> Result<T> {
    let norm = svd::norm2(op.matrix())?;
    let mut m = op.matrix().clone();
    m.shift_diagonal(-z);
    Ok(sentinel(svd::sigma_min(&m)?, norm))
}
