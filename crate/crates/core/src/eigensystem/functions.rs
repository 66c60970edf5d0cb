//! Exact eigenfunctions of the rotated Dirac oscillator and their
//! coefficients in the Hermite Galerkin basis.
//!
//! Level `n >= 1` carries four eigenfunctions
//! `chi^j = (u^j_1 phi_n, -i u^j_2 phi_{n-1}, u^j_3 phi_n, -i u^j_4 phi_{n-1})`
//! with `phi_d(x) = v h_d(v^2 x)`, `v = e^{i theta/4}`. The adjoint family
//! uses `conj(v)`. The unit factor `v` makes the pairing
//! `<chi~^i_n, chi^j_n'>` exactly biorthonormal.

use num_complex::Complex;
use num_traits::Zero;

use super::block::block_eigensystem;
use crate::error::{Error, Result};
use crate::linalg::{low_rank_norm2, CMatrix};
use crate::operators::level;
use crate::scalar::{cis, Real};
use crate::special::{
    check_angle, gauss_hermite, overlap_column_with_rule, overlap_nodes, QuadratureRule,
};

/// Tail margin between the level and the basis size.
pub const TAIL_MARGIN: usize = 60;

/// Relative mass allowed in the last ten coefficients of each component.
pub const TAIL_TOLERANCE: f64 = 1e-16;

/// Identifies one exact eigenfunction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExactEigenfunction {
    pub n: usize,
    /// `1..=4` for `n >= 1`; `1..=2` at `n = 0`.
    pub j: usize,
    /// Adjoint family (eigenfunctions of `H_theta^* = H_{-theta}`).
    pub tilde: bool,
}

impl ExactEigenfunction {
    pub fn new(n: usize, j: usize, tilde: bool) -> Result<Self> {
        let max_j = if n == 0 { 2 } else { 4 };
        if j == 0 || j > max_j {
            return Err(Error::InvalidParameter(format!(
                "eigenfunction index {j} invalid at level {n}"
            )));
        }
        Ok(ExactEigenfunction { n, j, tilde })
    }

    /// Hermite degrees carried by the four components.
    pub fn degrees(&self) -> [Option<usize>; 4] {
        if self.n == 0 {
            [Some(0), None, Some(0), None]
        } else {
            [
                Some(self.n),
                Some(self.n - 1),
                Some(self.n),
                Some(self.n - 1),
            ]
        }
    }

    /// Component factors including the `-i` on the lower-degree slots.
    pub fn factors<T: Real>(&self, mass: T) -> [Complex<T>; 4] {
        let z = Complex::zero();
        if self.n == 0 {
            let h = T::lit(0.5).precise_sqrt();
            let s = if self.j == 1 { h } else { -h };
            return [Complex::new(h, T::zero()), z, Complex::new(s, T::zero()), z];
        }
        let u = block_eigensystem(self.n, mass).expect("level >= 1").u[self.j - 1];
        [
            Complex::new(u[0], T::zero()),
            Complex::new(T::zero(), -u[1]),
            Complex::new(u[2], T::zero()),
            Complex::new(T::zero(), -u[3]),
        ]
    }

    pub fn eigenvalue<T: Real>(&self, mass: T) -> T {
        if self.n == 0 {
            if self.j == 1 {
                mass
            } else {
                -mass
            }
        } else if self.j <= 2 {
            level(self.n, mass)
        } else {
            -level(self.n, mass)
        }
    }
}

/// Galerkin coefficients of rotated Hermite functions `v h_d(v^2 x)` for
/// all degrees up to a bound, sharing one quadrature rule.
pub struct CoefficientTable<T> {
    basis_size: usize,
    theta: T,
    rule: QuadratureRule<T>,
    plain: Vec<Option<Vec<Complex<T>>>>,
    adjoint: Vec<Option<Vec<Complex<T>>>>,
}

impl<T: Real> CoefficientTable<T> {
    /// Table for degrees `<= max_degree` in a basis of `basis_size` modes.
    pub fn new(theta: T, max_degree: usize, basis_size: usize) -> Result<Self> {
        check_angle(theta)?;
        if basis_size < max_degree + TAIL_MARGIN {
            return Err(Error::BasisTooSmall {
                got: basis_size,
                need: max_degree + TAIL_MARGIN,
            });
        }
        let rule = gauss_hermite(overlap_nodes(basis_size - 1, max_degree))?;
        Ok(CoefficientTable {
            basis_size,
            theta,
            rule,
            plain: vec![None; max_degree + 1],
            adjoint: vec![None; max_degree + 1],
        })
    }

    pub fn basis_size(&self) -> usize {
        self.basis_size
    }

    /// Coefficients of `v h_d(v^2 x)`, with `v` conjugated on the adjoint
    /// side.
    pub fn column(&mut self, degree: usize, tilde: bool) -> Result<&[Complex<T>]> {
        if degree >= self.plain.len() {
            return Err(Error::InvalidParameter(format!(
                "degree {degree} beyond the table"
            )));
        }
        let theta = self.theta;
        let n = self.basis_size;
        let rule = &self.rule;
        let slot = if tilde {
            &mut self.adjoint[degree]
        } else {
            &mut self.plain[degree]
        };
        if slot.is_none() {
            let v = cis(theta / T::lit(4.0));
            let v = if tilde { v.conj() } else { v };
            let col: Vec<Complex<T>> = overlap_column_with_rule(rule, degree, v, n - 1)
                .into_iter()
                .map(|c| c * v)
                .collect();
            *slot = Some(col);
        }
        Ok(slot.as_deref().unwrap())
    }

    /// Coefficient vector of length `4N`, spinor-major. Fails when the last
    /// ten coefficients of a component carry more than [`TAIL_TOLERANCE`] of
    /// its mass.
    pub fn eigenfunction(&mut self, f: &ExactEigenfunction, mass: T) -> Result<Vec<Complex<T>>> {
        let n = self.basis_size;
        let factors = f.factors(mass);
        let mut out = vec![Complex::zero(); 4 * n];
        for (k, deg) in f.degrees().iter().enumerate() {
            let Some(d) = deg else { continue };
            let col = self.column(*d, f.tilde)?;
            let total = col.iter().fold(T::zero(), |s, z| s + z.norm_sqr());
            let tail = col[n - 10..]
                .iter()
                .fold(T::zero(), |s, z| s + z.norm_sqr());
            if tail > T::lit(TAIL_TOLERANCE) * total {
                return Err(Error::InsufficientBasis {
                    tail: (tail / total).to_f64_lossy(),
                });
            }
            for (slot, c) in out[k * n..(k + 1) * n].iter_mut().zip(col) {
                *slot = factors[k] * c;
            }
        }
        Ok(out)
    }
}

/// Coefficient vector of one exact eigenfunction in a basis of `N` modes.
pub fn eigenfunction_coeff_vector<T: Real>(
    f: &ExactEigenfunction,
    theta: T,
    mass: T,
    basis_size: usize,
) -> Result<Vec<Complex<T>>> {
    let mut table = CoefficientTable::new(theta, f.n, basis_size)?;
    table.eigenfunction(f, mass)
}

/// `<a, b>` with the first argument conjugated.
pub fn pairing<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::zero(), |s, (x, y)| s + x.conj() * y)
}

/// The two eigenfunction pairs spanning the spectral projector of
/// `+sqrt(2n + m^2)`; at `n = 0` with `m > 0` only one pair, at `n = 0` with
/// `m = 0` both functions of the zero eigenvalue.
pub fn projector_indices(n: usize, mass_is_zero: bool) -> Vec<usize> {
    if n == 0 && !mass_is_zero {
        vec![1]
    } else {
        vec![1, 2]
    }
}

/// Dense spectral projector `sum_j chi^j (chi~^j)^*` of the positive level.
pub fn projector_matrix<T: Real>(
    table: &mut CoefficientTable<T>,
    n: usize,
    mass: T,
) -> Result<CMatrix<T>> {
    let (right, left) = projector_factors(table, n, mass)?;
    let dim = right[0].len();
    Ok(CMatrix::from_fn(dim, dim, |r, c| {
        right
            .iter()
            .zip(&left)
            .fold(Complex::zero(), |s, (x, y)| s + x[r] * y[c].conj())
    }))
}

/// Right and left eigenvector families of the positive level projector.
pub fn projector_factors<T: Real>(
    table: &mut CoefficientTable<T>,
    n: usize,
    mass: T,
) -> Result<(Vec<Vec<Complex<T>>>, Vec<Vec<Complex<T>>>)> {
    let mut right = Vec::new();
    let mut left = Vec::new();
    for j in projector_indices(n, mass == T::zero()) {
        right.push(table.eigenfunction(&ExactEigenfunction::new(n, j, false)?, mass)?);
        left.push(table.eigenfunction(&ExactEigenfunction::new(n, j, true)?, mass)?);
    }
    Ok((right, left))
}

/// `ln ||P_n^+||` as the largest singular value of the finite-rank matrix
/// built from Galerkin coefficients, independent of the closed form.
pub fn projector_norm_log_matrix<T: Real>(
    table: &mut CoefficientTable<T>,
    n: usize,
    mass: T,
) -> Result<T> {
    let (right, left) = projector_factors(table, n, mass)?;
    Ok(low_rank_norm2(&right, &left)?.ln())
}

/// `P^2 - P` formed explicitly from `P` and its factors.
pub fn idempotency_defect<T: Real>(
    table: &mut CoefficientTable<T>,
    n: usize,
    mass: T,
) -> Result<CMatrix<T>> {
    let p = projector_matrix(table, n, mass)?;
    let (right, left) = projector_factors(table, n, mass)?;
    let dim = p.rows();
    // P chi^j for each j, then (P chi^j) (chi~^j)^* summed gives P^2
    let p_right: Vec<Vec<Complex<T>>> = right.iter().map(|v| p.matvec(v)).collect::<Result<_>>()?;
    Ok(CMatrix::from_fn(dim, dim, |r, c| {
        let sq = p_right
            .iter()
            .zip(&left)
            .fold(Complex::<T>::zero(), |s, (x, y)| s + x[r] * y[c].conj());
        sq - p[(r, c)]
    }))
}
