//! Non-relativistic limit of the dimensionful rotated Dirac oscillator.
//!
//! Both operators act on the Hermite basis of length unit `1/sqrt(m omega)`,
//! which does not depend on `c`. In that unit the limit operator is
//! `(omega/2)(S_theta + diag(-1, 1, -1, 1))` on each spinor component.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{norm2, CMatrix, Lu};
use crate::operators::{
    build_dimensionful, build_schrodinger, derivative_matrix, position_matrix,
    positive_mass_projector, spin_sign_matrix, spinor_diagonal, RelativisticParams,
    TruncatedOperator,
};
use crate::scalar::{cis, Real};
use crate::special::check_angle;

fn check_mass_frequency<T: Real>(mass: T, omega: T) -> Result<()> {
    if !(mass > T::zero() && mass.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "the limit needs a positive mass, got {mass}"
        )));
    }
    if !(omega > T::zero() && omega.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "omega must be positive, got {omega}"
        )));
    }
    Ok(())
}

fn add_scaled<T: Real>(acc: &mut CMatrix<T>, m: &CMatrix<T>, k: Complex<T>) {
    for (a, &b) in acc.as_mut_slice().iter_mut().zip(m.as_slice()) {
        *a += b * k;
    }
}

/// `(omega/2)(S_theta (x) I_4 + diag(-1, 1, -1, 1))` with the exact
/// Galerkin block of `S_theta`. Block diagonal across spinor components.
pub fn build_limit_operator<T: Real>(
    theta: T,
    mass: T,
    omega: T,
    n: usize,
) -> Result<TruncatedOperator<T>> {
    check_angle(theta)?;
    check_mass_frequency(mass, omega)?;
    let s = build_schrodinger(theta, n)?;
    let mut m = spinor_diagonal(s.matrix());
    add_scaled(
        &mut m,
        &spin_sign_matrix(n),
        Complex::new(T::one(), T::zero()),
    );
    Ok(TruncatedOperator::new(
        n,
        4,
        2,
        m.scale(Complex::new(omega / T::lit(2.0), T::zero())),
    ))
}

/// The same operator written through the truncated factors,
/// `(omega/2)((-e^{-i theta} D^2 + e^{i theta} X^2) (x) I_4 + diag(-1, 1, -1, 1) (x) [D, X])`
/// with `D`, `X` the `N x N` sections. It is the `c -> infinity` limit of the
/// truncated dimensionful operator itself and differs from
/// [`build_limit_operator`] only in the last Hermite mode.
pub fn build_truncated_limit_operator<T: Real>(
    theta: T,
    mass: T,
    omega: T,
    n: usize,
) -> Result<TruncatedOperator<T>> {
    check_angle(theta)?;
    check_mass_frequency(mass, omega)?;
    if n < 3 {
        return Err(Error::BasisTooSmall { got: n, need: 3 });
    }
    let d = derivative_matrix::<T>(n);
    let x = position_matrix::<T>(n);
    let d2 = d.matmul(&d)?;
    let x2 = x.matmul(&x)?;
    let mut s = CMatrix::zeros(n, n);
    add_scaled(&mut s, &d2, -cis(-theta));
    add_scaled(&mut s, &x2, cis(theta));
    let comm = d.matmul(&x)?.sub(&x.matmul(&d)?)?;
    let mut m = spinor_diagonal(&s);
    let signs = CMatrix::<T>::from_fn(4, 4, |r, c| {
        if r != c {
            Complex::new(T::zero(), T::zero())
        } else if r % 2 == 0 {
            Complex::new(-T::one(), T::zero())
        } else {
            Complex::new(T::one(), T::zero())
        }
    });
    add_scaled(
        &mut m,
        &signs.kron(&comm),
        Complex::new(T::one(), T::zero()),
    );
    Ok(TruncatedOperator::new(
        n,
        4,
        2,
        m.scale(Complex::new(omega / T::lit(2.0), T::zero())),
    ))
}

/// Resolvent differences along increasing `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitCheckResult<T> {
    pub z: Complex<T>,
    pub c_values: Vec<T>,
    /// `||(H(c) - m c^2 - z)^{-1} - (L - z)^{-1} P_+||_2` per `c`.
    pub diff_norms: Vec<T>,
    /// Whether the differences decrease strictly.
    pub monotone: bool,
}

impl<T: Real> LimitCheckResult<T> {
    /// `diff_norms` never grows by more than the relative slack `tol`.
    pub fn non_increasing(&self, tol: T) -> bool {
        self.diff_norms
            .windows(2)
            .all(|w| w[1] <= w[0] * (T::one() + tol))
    }

    /// Last difference over the first.
    pub fn reduction(&self) -> T {
        match (self.diff_norms.first(), self.diff_norms.last()) {
            (Some(&a), Some(&b)) => b / a,
            _ => T::nan(),
        }
    }

    /// `diff(c_{k+1}) / diff(c_k)` for consecutive entries.
    pub fn ratios(&self) -> Vec<T> {
        self.diff_norms.windows(2).map(|w| w[1] / w[0]).collect()
    }

    /// CSV with header `c,diff_norm`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("c,diff_norm\n");
        for (c, d) in self.c_values.iter().zip(&self.diff_norms) {
            s.push_str(&format!(
                "{:.16e},{:.16e}\n",
                c.to_f64_lossy(),
                d.to_f64_lossy()
            ));
        }
        s
    }
}

fn shifted_inverse<T: Real>(m: &CMatrix<T>, z: Complex<T>) -> Result<CMatrix<T>> {
    let mut a = m.clone();
    a.shift_diagonal(-z);
    let lu = Lu::new(&a).map_err(|e| match e {
        Error::Singular => Error::SingularShift {
            re: z.re.to_f64_lossy(),
            im: z.im.to_f64_lossy(),
        },
        other => other,
    })?;
    let inv = lu.inverse();
    if !inv.is_finite() {
        return Err(Error::SingularShift {
            re: z.re.to_f64_lossy(),
            im: z.im.to_f64_lossy(),
        });
    }
    Ok(inv)
}

/// Compares `(H(c) - m c^2 - z)^{-1}` with `(L - z)^{-1} P_+` on the size-`N`
/// truncation for each `c`, with `L` from [`build_truncated_limit_operator`].
pub fn nonrel_convergence<T: Real>(
    theta: T,
    mass: T,
    omega: T,
    z: Complex<T>,
    c_values: &[T],
    n: usize,
) -> Result<LimitCheckResult<T>> {
    check_angle(theta)?;
    check_mass_frequency(mass, omega)?;
    if z.im == T::zero() {
        return Err(Error::InvalidParameter(format!(
            "z = {} must be non-real",
            z.re
        )));
    }
    if n < 64 {
        return Err(Error::BasisTooSmall { got: n, need: 64 });
    }
    if c_values.is_empty() || c_values.iter().any(|&c| !(c > T::zero() && c.is_finite())) {
        return Err(Error::InvalidParameter(
            "speeds of light must be positive".into(),
        ));
    }
    if c_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "speeds of light must increase".into(),
        ));
    }
    let limit = build_truncated_limit_operator(theta, mass, omega, n)?;
    let reference = shifted_inverse(limit.matrix(), z)?.matmul(&positive_mass_projector(n))?;
    let diff_norms = c_values
        .par_iter()
        .map(|&c| {
            let p = RelativisticParams::new(theta, mass, c, omega)?;
            let h = build_dimensionful(&p, n)?;
            let mut m = h.into_matrix();
            m.shift_diagonal(Complex::new(-(mass * c * c), T::zero()));
            let r = shifted_inverse(&m, z)?;
            norm2(&r.sub(&reference)?)
        })
        .collect::<Result<Vec<T>>>()?;
    let monotone = diff_norms.windows(2).all(|w| w[1] < w[0]);
    Ok(LimitCheckResult {
        z,
        c_values: c_values.to_vec(),
        diff_norms,
        monotone,
    })
}
