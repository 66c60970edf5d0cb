use num_complex::Complex;

use super::builders::{build_dirac, build_schrodinger, spin_sign_matrix, spinor_diagonal};
use super::params::OscillatorParams;
use super::truncated::TruncatedOperator;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, CMatrix};
use crate::scalar::Real;

/// `{±sqrt(2n + m^2) : n = 0..=n_max}` ascending; zero appears once when
/// `m = 0`.
pub fn exact_spectrum<T: Real>(mass: T, n_max: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(2 * n_max + 2);
    for n in 0..=n_max {
        let l = level(n, mass);
        if l == T::zero() {
            out.push(l);
        } else {
            out.push(l);
            out.push(-l);
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// `sqrt(2n + m^2)`.
pub fn level<T: Real>(n: usize, mass: T) -> T {
    (T::from_count(2 * n) + mass * mass).precise_sqrt()
}

/// `H^2 - (S_theta + m^2) - i alpha_1 alpha_2` for the truncations. Only the
/// rows and columns of the last Hermite mode are nonzero beyond rounding.
pub fn square_identity_defect<T: Real>(
    params: &OscillatorParams<T>,
    n: usize,
) -> Result<CMatrix<T>> {
    let h = build_dirac(params, n)?;
    let mut s = build_schrodinger(params.theta, n)?.into_matrix();
    s.shift_diagonal(Complex::new(params.mass * params.mass, T::zero()));
    let sq = h.matrix().matmul(h.matrix())?;
    sq.sub(&spinor_diagonal(&s))?.sub(&spin_sign_matrix(n))
}

/// Largest entry of [`square_identity_defect`] among rows and columns with
/// Hermite index at most `N - 2`.
pub fn square_identity_residual<T: Real>(params: &OscillatorParams<T>, n: usize) -> Result<T> {
    if n < 4 {
        return Err(Error::BasisTooSmall { got: n, need: 4 });
    }
    let d = square_identity_defect(params, n)?;
    let mut worst = T::zero();
    for r in 0..4 * n {
        for c in 0..4 * n {
            if r % n < n - 1 && c % n < n - 1 {
                worst = worst.max(d[(r, c)].norm());
            }
        }
    }
    Ok(worst)
}

/// Support function of the numerical range in direction `phi`: the
/// largest eigenvalue of the Hermitian part of `e^{-i phi} H`.
pub fn numerical_range_support<T: Real>(op: &TruncatedOperator<T>, phi: T) -> Result<T> {
    let rot = Complex::new(phi.cos(), -phi.sin());
    let a = op.matrix().scale(rot);
    let herm = a
        .add(&a.adjoint())?
        .scale(Complex::new(T::lit(0.5), T::zero()));
    let ev = hermitian_eigenvalues(&herm)?;
    Ok(ev.last().copied().unwrap_or_else(T::zero))
}

/// Largest `|Im w|` over the numerical range.
pub fn numerical_range_imag_extent<T: Real>(op: &TruncatedOperator<T>) -> Result<T> {
    let up = numerical_range_support(op, T::FRAC_PI_2())?;
    let down = numerical_range_support(op, -T::FRAC_PI_2())?;
    Ok(up.max(down))
}
