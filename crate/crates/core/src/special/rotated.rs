//! Norms and basis coefficients of the complex-dilated Hermite functions
//! `h_n(e^{i theta/2} x)`.
//!
//! All integrals here are Gaussian times polynomial, so a Gauss–Hermite rule
//! of sufficient size evaluates them exactly up to rounding. The Gaussian
//! factors are removed analytically so that nothing overflows and no
//! exponential is evaluated at large arguments.

use num_complex::Complex;

use super::hermite::HermiteRecurrence;
use super::quadrature::{gauss_hermite, QuadratureRule};
use super::scaled::ScaledComplex;
use crate::error::{Error, Result};
use crate::scalar::{cis, csqrt, Real};

/// Rejects angles outside the open interval `(-pi/2, pi/2)`.
pub fn check_angle<T: Real>(theta: T) -> Result<()> {
    if theta.is_finite() && theta.abs() < T::FRAC_PI_2() {
        Ok(())
    } else {
        Err(Error::AngleOutOfRange(theta.to_f64_lossy()))
    }
}

/// Default rule size for degree-`2n` integrands.
pub fn default_nodes(n: usize) -> usize {
    2 * n + 16
}

/// `ln ||h_n(e^{i theta/2} .)||^2`.
pub fn rotated_norm_sq_log<T: Real>(n: usize, theta: T) -> Result<T> {
    Ok(rotated_norm_sq_log_series(n, theta)?[n])
}

/// `ln ||h_k(e^{i theta/2} .)||^2` for `k = 0..=n_max` from one rule.
pub fn rotated_norm_sq_log_series<T: Real>(n_max: usize, theta: T) -> Result<Vec<T>> {
    check_angle(theta)?;
    let rule = gauss_hermite::<T>(default_nodes(n_max))?;
    Ok(norm_series_with_rule(&rule, n_max, theta))
}

/// Same as [`rotated_norm_sq_log_series`] with a caller supplied rule.
///
/// With `y = x sqrt(cos theta)` the integral becomes
/// `cos(theta)^{-1/2} sum_i w_i |q_n(e^{i theta/2} y_i / sqrt(cos theta))|^2`.
pub fn norm_series_with_rule<T: Real>(rule: &QuadratureRule<T>, n_max: usize, theta: T) -> Vec<T> {
    let ct = theta.cos();
    let dir = cis(theta / T::lit(2.0)).unscale(ct.precise_sqrt());
    let mut acc = vec![ScaledComplex::<T>::zero(); n_max + 1];
    for (&y, w) in rule.nodes().iter().zip(rule.scaled_weights()) {
        let mut r = HermiteRecurrence::polynomial(dir.scale(y));
        for slot in acc.iter_mut() {
            let term = r.current().norm_sqr() * *w;
            *slot = slot.add(&term);
            r.step();
        }
    }
    let shift = ct.ln() / T::lit(2.0);
    acc.iter().map(|s| s.ln_abs() - shift).collect()
}

/// Dilation data for `h_n(u^2 x)` against `h_k(x)` with `|u| = 1`.
///
/// The substitution `x = s y`, `s = sqrt(2 / (1 + u^4))`, turns the product
/// of Gaussians into `e^{-y^2}` along a rotated contour; the second factor is
/// then evaluated at `t y` with `t = u^2 s`.
#[derive(Clone, Copy, Debug)]
struct Contour<T> {
    s: Complex<T>,
    t: Complex<T>,
}

impl<T: Real> Contour<T> {
    fn new(u: Complex<T>) -> Self {
        let u2 = u * u;
        let u4 = u2 * u2;
        let one = Complex::new(T::one(), T::zero());
        let s = csqrt(Complex::new(T::lit(2.0), T::zero()) / (one + u4));
        Contour { s, t: u2 * s }
    }
}

/// Rule size needed for `k <= k_max` against degree `n`.
pub fn overlap_nodes(k_max: usize, n: usize) -> usize {
    (k_max + n).div_ceil(2) + 1
}

/// `int h_k(x) h_n(e^{i theta/2} x) dx`.
pub fn overlap<T: Real>(k: usize, n: usize, theta: T) -> Result<Complex<T>> {
    check_angle(theta)?;
    let rule = gauss_hermite::<T>(overlap_nodes(k, n))?;
    let u = cis(theta / T::lit(4.0));
    Ok(overlap_column_with_rule(&rule, n, u, k)[k])
}

/// `int h_k(x) h_n(e^{i theta/2} x) dx` for `k = 0..=k_max`.
pub fn overlap_column<T: Real>(n: usize, theta: T, k_max: usize) -> Result<Vec<Complex<T>>> {
    check_angle(theta)?;
    let rule = gauss_hermite::<T>(overlap_nodes(k_max, n))?;
    Ok(overlap_column_with_rule(
        &rule,
        n,
        cis(theta / T::lit(4.0)),
        k_max,
    ))
}

/// `int h_k(x) h_n(u^2 x) dx` for `k = 0..=k_max` and a unit `u` with
/// `|arg u| < pi/8`. The rule needs at least [`overlap_nodes`] points.
///
/// Exactly covariant under `u -> conj(u)`, which conjugates the result, and
/// odd `k + n` columns vanish exactly.
pub fn overlap_column_with_rule<T: Real>(
    rule: &QuadratureRule<T>,
    n: usize,
    u: Complex<T>,
    k_max: usize,
) -> Vec<Complex<T>> {
    let c = Contour::new(u);
    let len = rule.len();
    let eval = |i: usize| -> Vec<ScaledComplex<T>> {
        let y = rule.nodes()[i];
        let mut fixed = HermiteRecurrence::polynomial(c.t.scale(y));
        fixed.advance_to(n);
        let base = fixed.current() * rule.scaled_weights()[i];
        let mut r = HermiteRecurrence::polynomial(c.s.scale(y));
        (0..=k_max)
            .map(|_| {
                let v = r.current() * base;
                r.step();
                v
            })
            .collect()
    };
    let mut acc = vec![ScaledComplex::<T>::zero(); k_max + 1];
    for i in 0..len / 2 {
        let a = eval(i);
        let b = eval(len - 1 - i);
        for ((slot, x), y) in acc.iter_mut().zip(&a).zip(&b) {
            *slot = slot.add(&x.add(y));
        }
    }
    if len % 2 == 1 {
        for (slot, x) in acc.iter_mut().zip(eval(len / 2)) {
            *slot = slot.add(&x);
        }
    }
    acc.iter().map(|v| v.scale(c.s).to_complex()).collect()
}
