use crate::error::{Error, Result};
use crate::operators::level;
use crate::scalar::Real;

/// Restriction of the Dirac operator to the four-dimensional invariant
/// subspace of level `n >= 1`, in the real basis
/// `(phi_n, -i phi_{n-1}, phi_n, -i phi_{n-1})` on the four components.
///
/// The matrix is `[[0, L], [L, 0]]` with `L = [[m, a], [a, -m]]`,
/// `a = sqrt(2n)`, and does not depend on the rotation angle.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockEigensystem<T> {
    pub n: usize,
    pub mass: T,
    pub matrix: [[T; 4]; 4],
    /// Normalized eigenvectors `u^1..u^4`, one per row.
    pub u: [[T; 4]; 4],
    /// `[r, r, -r, -r]` with `r = sqrt(2n + m^2)`.
    pub eigenvalues: [T; 4],
}

/// Unnormalized closed-form eigenvectors for level `n >= 1`.
pub fn raw_block_vectors<T: Real>(n: usize, mass: T) -> [[T; 4]; 4] {
    let a = T::from_count(2 * n).precise_sqrt();
    let r = level(n, mass);
    let m = mass;
    [
        [a, r - m, a, r - m],
        [-a, r + m, a, -r - m],
        [-a, r + m, -a, r + m],
        [a, r - m, -a, -r + m],
    ]
}

pub fn block_eigensystem<T: Real>(n: usize, mass: T) -> Result<BlockEigensystem<T>> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "level 0 has no four-dimensional block".into(),
        ));
    }
    let a = T::from_count(2 * n).precise_sqrt();
    let m = mass;
    let z = T::zero();
    let matrix = [[z, z, m, a], [z, z, a, -m], [m, a, z, z], [a, -m, z, z]];
    let r = level(n, mass);
    let u = raw_block_vectors(n, mass).map(|v| {
        let norm = v.iter().fold(T::zero(), |s, &x| s + x * x).precise_sqrt();
        v.map(|x| x / norm)
    });
    Ok(BlockEigensystem {
        n,
        mass,
        matrix,
        u,
        eigenvalues: [r, r, -r, -r],
    })
}

impl<T: Real> BlockEigensystem<T> {
    /// `max_k |(M u^j)_k - lambda_j u^j_k|` over all `j`.
    pub fn residual(&self) -> T {
        let mut worst = T::zero();
        for (v, &lam) in self.u.iter().zip(&self.eigenvalues) {
            for (row, &vk) in self.matrix.iter().zip(v) {
                let mv = row.iter().zip(v).fold(T::zero(), |s, (&a, &b)| s + a * b);
                worst = worst.max((mv - lam * vk).abs());
            }
        }
        worst
    }

    /// Gram matrix of the eigenvectors.
    pub fn gram(&self) -> [[T; 4]; 4] {
        let mut g = [[T::zero(); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                g[i][j] = (0..4).fold(T::zero(), |s, k| s + self.u[i][k] * self.u[j][k]);
            }
        }
        g
    }
}
