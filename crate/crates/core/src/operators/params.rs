use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::check_angle;

/// Rotation angle and mass of the oscillator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OscillatorParams<T> {
    pub theta: T,
    pub mass: T,
}

impl<T: Real> OscillatorParams<T> {
    pub fn new(theta: T, mass: T) -> Result<Self> {
        check_angle(theta)?;
        if !(mass >= T::zero() && mass.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "mass must be finite and nonnegative, got {mass}"
            )));
        }
        Ok(OscillatorParams { theta, mass })
    }
}

/// Parameters of the dimensionful operator: angle, mass, speed of light and
/// oscillator frequency.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelativisticParams<T> {
    pub theta: T,
    pub mass: T,
    pub c: T,
    pub omega: T,
}

impl<T: Real> RelativisticParams<T> {
    pub fn new(theta: T, mass: T, c: T, omega: T) -> Result<Self> {
        check_angle(theta)?;
        for (name, v) in [("mass", mass), ("c", c), ("omega", omega)] {
            if !(v > T::zero() && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(RelativisticParams {
            theta,
            mass,
            c,
            omega,
        })
    }
}

/// `(cos(theta/2), sin(theta/2))` with the sine odd in `theta` bit for bit.
pub fn half_angle<T: Real>(theta: T) -> (T, T) {
    let h = theta.abs() / T::lit(2.0);
    let (s, c) = h.sin_cos();
    (c, if theta < T::zero() { -s } else { s })
}

/// `(cos theta, sin theta)` with the sine odd in `theta` bit for bit.
pub fn full_angle<T: Real>(theta: T) -> (T, T) {
    let (s, c) = theta.abs().sin_cos();
    (c, if theta < T::zero() { -s } else { s })
}
