//! Dense and banded complex linear algebra over any [`Real`](crate::Real).

pub mod band;
pub mod blocks;
pub mod eig;
pub mod hermitian;
pub mod lu;
pub mod matrix;
pub mod rot;
pub mod svd;
pub mod tridiag;

pub use band::{band_bidiagonalize, BandMatrix, BandTriangular};
pub use blocks::{decouple, BlockBand};
pub use eig::eigenvalues;
pub use hermitian::{hermitian_eigen, hermitian_eigenvalues};
pub use lu::Lu;
pub use matrix::{dot, vec_norm, CMatrix};
pub use rot::{Givens, Reflector};
pub use svd::{bidiagonalize, low_rank_norm2, norm2, sigma_min, singular_values, Bidiagonal};
pub use tridiag::symmetric_tridiagonal_eigen;
