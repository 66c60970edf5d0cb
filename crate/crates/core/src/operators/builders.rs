//! Galerkin matrices in the Hermite basis.
//!
//! Entries are written from closed forms rather than assembled from
//! Kronecker products, so that every entry involves at most one rounding
//! and the adjoint, parity and conjugation identities hold bit for bit.

use num_complex::Complex;
use num_traits::Zero;

use super::params::{full_angle, half_angle, OscillatorParams, RelativisticParams};
use super::truncated::TruncatedOperator;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::Real;
use crate::special::check_angle;

fn need_basis(n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(Error::BasisTooSmall { got: n, need: min })
    } else {
        Ok(())
    }
}

/// Derivative matrix: `D[n][n+1] = sqrt((n+1)/2) = -D[n+1][n]`.
pub fn derivative_matrix<T: Real>(n: usize) -> CMatrix<T> {
    CMatrix::from_fn(n, n, |r, c| {
        let v = |k: usize| (T::from_count(k + 1) / T::lit(2.0)).precise_sqrt();
        if c == r + 1 {
            Complex::new(v(r), T::zero())
        } else if r == c + 1 {
            Complex::new(-v(c), T::zero())
        } else {
            Complex::zero()
        }
    })
}

/// Position matrix: `X[n][n+1] = X[n+1][n] = sqrt((n+1)/2)`.
pub fn position_matrix<T: Real>(n: usize) -> CMatrix<T> {
    CMatrix::from_fn(n, n, |r, c| {
        if r.abs_diff(c) == 1 {
            Complex::new(
                (T::from_count(r.min(c) + 1) / T::lit(2.0)).precise_sqrt(),
                T::zero(),
            )
        } else {
            Complex::zero()
        }
    })
}

/// The rotated oscillator `-e^{-i theta} d^2/dx^2 + e^{i theta} x^2`:
/// diagonal `(2n+1) cos theta`, and `i sin theta sqrt((n+1)(n+2))` two
/// places off the diagonal.
pub fn build_schrodinger<T: Real>(theta: T, n: usize) -> Result<TruncatedOperator<T>> {
    check_angle(theta)?;
    need_basis(n, 3)?;
    let (c, s) = full_angle(theta);
    let m = CMatrix::from_fn(n, n, |r, col| {
        if r == col {
            Complex::new(T::from_count(2 * r + 1) * c, T::zero())
        } else if r.abs_diff(col) == 2 {
            let k = r.min(col);
            Complex::new(
                T::zero(),
                s * T::from_count((k + 1) * (k + 2)).precise_sqrt(),
            )
        } else {
            Complex::zero()
        }
    });
    Ok(TruncatedOperator::new(n, 1, 2, m))
}

/// Writes the kinetic part `-i e^{-i theta/2} alpha_1 D - e^{i theta/2} alpha_2 X`
/// scaled by `scale`, keeping only the parts selected by the two flags
/// (the `cos(theta/2)` and `sin(theta/2)` parts).
fn kinetic<T: Real>(
    m: &mut CMatrix<T>,
    theta: T,
    n: usize,
    scale: T,
    cos_part: bool,
    sin_part: bool,
) {
    let (c, s) = half_angle(theta);
    let c = if cos_part { c * scale } else { T::zero() };
    let s = if sin_part { s * scale } else { T::zero() };
    for i in 0..n - 1 {
        let w = T::from_count(2 * (i + 1)).precise_sqrt();
        for (a, b) in [(0, 3), (2, 1)] {
            m[(a * n + i, b * n + i + 1)] = Complex::new(-(s * w), T::zero());
            m[(a * n + i + 1, b * n + i)] = Complex::new(T::zero(), c * w);
        }
        for (a, b) in [(1, 2), (3, 0)] {
            m[(a * n + i, b * n + i + 1)] = Complex::new(T::zero(), -(c * w));
            m[(a * n + i + 1, b * n + i)] = Complex::new(s * w, T::zero());
        }
    }
}

/// Adds `mass * alpha_3` on every mode.
fn mass_term<T: Real>(m: &mut CMatrix<T>, n: usize, mass: T) {
    if mass == T::zero() {
        return;
    }
    for i in 0..n {
        m[(i, 2 * n + i)] = Complex::new(mass, T::zero());
        m[(n + i, 3 * n + i)] = Complex::new(-mass, T::zero());
        m[(2 * n + i, i)] = Complex::new(mass, T::zero());
        m[(3 * n + i, n + i)] = Complex::new(-mass, T::zero());
    }
}

/// Rotated Dirac oscillator
/// `-i e^{-i theta/2} alpha_1 d/dx - e^{i theta/2} alpha_2 x + m alpha_3`.
pub fn build_dirac<T: Real>(
    params: &OscillatorParams<T>,
    n: usize,
) -> Result<TruncatedOperator<T>> {
    check_angle(params.theta)?;
    need_basis(n, 3)?;
    let mut m = CMatrix::zeros(4 * n, 4 * n);
    kinetic(&mut m, params.theta, n, T::one(), true, true);
    mass_term(&mut m, n, params.mass);
    Ok(TruncatedOperator::new(n, 4, 1, m))
}

/// Dimensionful operator `c Q + m c^2 alpha_3` in the length unit
/// `1/sqrt(m omega)`, where `Q = sqrt(m omega)` times the massless rotated
/// Dirac oscillator.
pub fn build_dimensionful<T: Real>(
    params: &RelativisticParams<T>,
    n: usize,
) -> Result<TruncatedOperator<T>> {
    let p = RelativisticParams::new(params.theta, params.mass, params.c, params.omega)?;
    need_basis(n, 3)?;
    let mut m = CMatrix::zeros(4 * n, 4 * n);
    let scale = p.c * (p.mass * p.omega).precise_sqrt();
    kinetic(&mut m, p.theta, n, scale, true, true);
    mass_term(&mut m, n, p.mass * p.c * p.c);
    Ok(TruncatedOperator::new(n, 4, 1, m))
}

/// Hermitian part `A = cos(theta/2)(-i alpha_1 D - alpha_2 X)` and
/// anti-Hermitian part `B = sin(theta/2)(-alpha_1 D - i alpha_2 X)` of the
/// massless operator.
pub fn split_symmetric_antisymmetric<T: Real>(
    theta: T,
    n: usize,
) -> Result<(TruncatedOperator<T>, TruncatedOperator<T>)> {
    check_angle(theta)?;
    need_basis(n, 3)?;
    let mut a = CMatrix::zeros(4 * n, 4 * n);
    let mut b = CMatrix::zeros(4 * n, 4 * n);
    kinetic(&mut a, theta, n, T::one(), true, false);
    kinetic(&mut b, theta, n, T::one(), false, true);
    Ok((
        TruncatedOperator::new(n, 4, 1, a),
        TruncatedOperator::new(n, 4, 1, b),
    ))
}

/// `diag(-1, 1, -1, 1)` on every mode: the matrix `i alpha_1 alpha_2`.
pub fn spin_sign_matrix<T: Real>(n: usize) -> CMatrix<T> {
    CMatrix::from_fn(4 * n, 4 * n, |r, c| {
        if r != c {
            Complex::zero()
        } else if (r / n).is_multiple_of(2) {
            Complex::new(-T::one(), T::zero())
        } else {
            Complex::new(T::one(), T::zero())
        }
    })
}

/// `M` placed on each of four spinor components.
pub fn spinor_diagonal<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    CMatrix::<T>::identity(4).kron(m)
}

/// `P_+ = (I + alpha_3)/2` on every mode.
pub fn positive_mass_projector<T: Real>(n: usize) -> CMatrix<T> {
    let mut p = CMatrix::zeros(4 * n, 4 * n);
    let h = Complex::new(T::lit(0.5), T::zero());
    for i in 0..n {
        for (a, b, sign) in [
            (0, 0, 1),
            (1, 1, 1),
            (2, 2, 1),
            (3, 3, 1),
            (0, 2, 1),
            (2, 0, 1),
            (1, 3, -1),
            (3, 1, -1),
        ] {
            p[(a * n + i, b * n + i)] = if sign > 0 { h } else { -h };
        }
    }
    p
}
