use std::io::{self, Write};

use num_complex::Complex;
use num_traits::Zero;

use crate::linalg::{BlockBand, CMatrix};
use crate::scalar::Real;

/// Finite section of an operator in the Hermite basis, `d` spinor
/// components of `N` modes each, stored densely in spinor-major order
/// (row `component * N + mode`).
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedOperator<T> {
    basis_size: usize,
    spinor_dim: usize,
    bandwidth: usize,
    matrix: CMatrix<T>,
}

impl<T: Real> TruncatedOperator<T> {
    pub fn new(basis_size: usize, spinor_dim: usize, bandwidth: usize, matrix: CMatrix<T>) -> Self {
        debug_assert_eq!(matrix.rows(), basis_size * spinor_dim);
        TruncatedOperator {
            basis_size,
            spinor_dim,
            bandwidth,
            matrix,
        }
    }

    pub fn basis_size(&self) -> usize {
        self.basis_size
    }

    pub fn spinor_dim(&self) -> usize {
        self.spinor_dim
    }

    /// Largest Hermite-index distance of a nonzero entry.
    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    /// Splits a global index into `(component, mode)`.
    pub fn split_index(&self, i: usize) -> (usize, usize) {
        (i / self.basis_size, i % self.basis_size)
    }

    /// Mode-major position of a spinor-major index; under this ordering
    /// the matrix is banded.
    pub fn mode_major_key(&self, i: usize) -> usize {
        let (comp, mode) = self.split_index(i);
        mode * self.spinor_dim + comp
    }

    /// Decoupled band blocks for fast shifted singular values.
    pub fn block_band(&self) -> BlockBand<T> {
        BlockBand::new(&self.matrix, |i| self.mode_major_key(i))
    }

    /// Largest Hermite-index distance among nonzero entries, measured.
    pub fn measured_bandwidth(&self) -> usize {
        let n = self.dim();
        let mut b = 0;
        for r in 0..n {
            for c in 0..n {
                if !self.matrix[(r, c)].is_zero() {
                    b = b.max(self.split_index(r).1.abs_diff(self.split_index(c).1));
                }
            }
        }
        b
    }

    /// Writes `row col re im` for every nonzero entry, row-major, with 17
    /// significant digits.
    pub fn dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        let n = self.dim();
        for r in 0..n {
            for c in 0..n {
                let z: Complex<T> = self.matrix[(r, c)];
                if !z.is_zero() {
                    writeln!(
                        out,
                        "{r} {c} {:.16e} {:.16e}",
                        z.re.to_f64_lossy(),
                        z.im.to_f64_lossy()
                    )?;
                }
            }
        }
        Ok(())
    }
}
