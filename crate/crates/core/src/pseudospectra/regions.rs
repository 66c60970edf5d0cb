//! Closed-form regions that enclose or are enclosed by the pseudospectrum,
//! and the resolvent bound valid away from the real axis.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{phase, Real};
use crate::special::check_angle;

/// Constants of the inner sector region: opening deficit `delta` and the
/// radii thresholds `c1`, `c2`. The tolerance `eps` is passed per query so one
/// calibration serves every `eps`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionParams<T> {
    pub delta: T,
    pub c1: T,
    pub c2: T,
}

impl<T: Real> RegionParams<T> {
    pub fn new(delta: T, c1: T, c2: T) -> Result<Self> {
        for (name, v) in [("delta", delta), ("c1", c1), ("c2", c2)] {
            if !(v > T::zero() && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(RegionParams { delta, c1, c2 })
    }
}

fn check_eps<T: Real>(eps: T) -> Result<()> {
    if eps > T::zero() && eps < T::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "eps must lie in (0, 1), got {eps}"
        )))
    }
}

/// `|arg w|` in `[0, pi]`.
fn abs_arg<T: Real>(w: Complex<T>) -> T {
    let p = phase(w);
    p.im.atan2(p.re).abs()
}

/// Whether `z` is in the sector region where the pseudospectrum is known to
/// contain every point: with `w = z^2 - m^2`, `|w| >= c1`,
/// `|arg w| <= |theta| - delta` and `|w| > c2 ln(1/eps^2)`.
pub fn inner_region_member<T: Real>(
    z: Complex<T>,
    theta: T,
    mass: T,
    eps: T,
    rp: &RegionParams<T>,
) -> Result<bool> {
    check_angle(theta)?;
    check_eps(eps)?;
    if rp.delta >= theta.abs() {
        return Err(Error::InvalidParameter(format!(
            "delta {} must be below |theta| {}",
            rp.delta,
            theta.abs()
        )));
    }
    let w = z * z - Complex::new(mass * mass, T::zero());
    let r = w.norm();
    let log_term = (T::one() / (eps * eps)).ln();
    Ok(r >= rp.c1 && abs_arg(w) <= theta.abs() - rp.delta && r > rp.c2 * log_term)
}

/// Whether `z` satisfies
/// `(1 - |tan(theta/2)|) |Im z| <= (|Re z| + m) |tan(theta/2)| + eps`,
/// the region that contains the whole `eps`-pseudospectrum.
pub fn outer_region_member<T: Real>(z: Complex<T>, theta: T, mass: T, eps: T) -> Result<bool> {
    check_angle(theta)?;
    let t = (theta / T::lit(2.0)).tan().abs();
    Ok((T::one() - t) * z.im.abs() <= (z.re.abs() + mass) * t + eps)
}

/// `1 / ((1 - t)|Im z| - t(m + |Re z|))` with `t = |tan(theta/2)|` when the
/// denominator is positive, `+inf` (no bound) otherwise.
pub fn resolvent_upper_bound<T: Real>(z: Complex<T>, theta: T, mass: T) -> Result<T> {
    check_angle(theta)?;
    let t = (theta / T::lit(2.0)).tan().abs();
    let gap = (T::one() - t) * z.im.abs() - t * (mass + z.re.abs());
    Ok(if gap > T::zero() {
        T::one() / gap
    } else {
        T::infinity()
    })
}

/// `f(theta) = arctan(t / (1 - t))`, `t = |tan(theta/2)|`: rays from `+-m` at
/// angles beyond `f(theta)` stay under the resolvent bound.
pub fn transition_angle<T: Real>(theta: T) -> Result<T> {
    check_angle(theta)?;
    let t = (theta / T::lit(2.0)).tan().abs();
    Ok(t.atan2(T::one() - t))
}
