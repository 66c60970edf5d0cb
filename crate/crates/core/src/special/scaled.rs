//! Complex numbers with a detached binary exponent.

use std::fmt;
use std::ops::{Div, Mul, Neg};

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::{cabs, pow2, Real};

/// `mantissa * 2^exponent` with `1 <= |mantissa| < 2`, or zero.
///
/// Carries values far outside the floating point range, such as Hermite
/// functions at complex arguments of large degree or Gaussian quadrature
/// weights deep in the tails.
#[derive(Clone, Copy, PartialEq)]
pub struct ScaledComplex<T> {
    mantissa: Complex<T>,
    exponent: i64,
}

impl<T: fmt::Debug> fmt::Debug for ScaledComplex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:?} + {:?}i) * 2^{}",
            self.mantissa.re, self.mantissa.im, self.exponent
        )
    }
}

impl<T: Real> ScaledComplex<T> {
    pub fn zero() -> Self {
        ScaledComplex {
            mantissa: Complex::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        ScaledComplex {
            mantissa: Complex::new(T::one(), T::zero()),
            exponent: 0,
        }
    }

    /// Normalizes `m * 2^e`. Non-finite mantissas are kept as they are.
    pub fn new(m: Complex<T>, e: i64) -> Self {
        if m.is_zero() {
            return Self::zero();
        }
        if !(m.re.is_finite() && m.im.is_finite()) {
            return ScaledComplex {
                mantissa: m,
                exponent: e,
            };
        }
        let r = cabs(m);
        let mut k = r.log2().floor().to_i64().unwrap_or(0);
        let mut mant = m * pow2::<T>(-k);
        let two = T::lit(2.0);
        loop {
            let a = cabs(mant);
            if a >= two {
                mant = mant.unscale(two);
                k += 1;
            } else if a < T::one() {
                mant = mant.scale(two);
                k -= 1;
            } else {
                break;
            }
        }
        ScaledComplex {
            mantissa: mant,
            exponent: e + k,
        }
    }

    pub fn from_complex(z: Complex<T>) -> Self {
        Self::new(z, 0)
    }

    pub fn from_real(x: T) -> Self {
        Self::new(Complex::new(x, T::zero()), 0)
    }

    pub fn mantissa(&self) -> Complex<T> {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// `e^z`.
    pub fn exp(z: Complex<T>) -> Self {
        // e^{re} = 2^{re / ln 2}; split off the integer part of the exponent
        let t = z.re / T::LN_2();
        let k = t.floor();
        let frac = (t - k) * T::LN_2();
        let (s, c) = z.im.sin_cos();
        Self::new(
            Complex::new(c, s).scale(frac.exp()),
            k.to_i64().unwrap_or(0),
        )
    }

    /// Value as an ordinary complex number (may overflow or underflow).
    pub fn to_complex(&self) -> Complex<T> {
        if self.is_zero() {
            return Complex::zero();
        }
        let half = self.exponent / 2;
        self.mantissa
            .scale(pow2::<T>(half))
            .scale(pow2::<T>(self.exponent - half))
    }

    /// `ln |z|`; `-inf` for zero.
    pub fn ln_abs(&self) -> T {
        if self.is_zero() {
            return T::neg_infinity();
        }
        cabs(self.mantissa).ln() + T::from_i64(self.exponent).unwrap() * T::LN_2()
    }

    /// `|z|^2` as a scaled value.
    pub fn norm_sqr(&self) -> Self {
        Self::new(
            Complex::new(self.mantissa.norm_sqr(), T::zero()),
            2 * self.exponent,
        )
    }

    pub fn conj(&self) -> Self {
        ScaledComplex {
            mantissa: self.mantissa.conj(),
            exponent: self.exponent,
        }
    }

    /// Multiplication by an ordinary complex number.
    pub fn scale(&self, k: Complex<T>) -> Self {
        Self::new(self.mantissa * k, self.exponent)
    }

    /// Multiplication by `2^k`, exact.
    pub fn ldexp(&self, k: i64) -> Self {
        if self.is_zero() {
            return *self;
        }
        ScaledComplex {
            mantissa: self.mantissa,
            exponent: self.exponent + k,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (big, small) = if self.exponent >= other.exponent {
            (self, other)
        } else {
            (other, self)
        };
        let gap = big.exponent - small.exponent;
        if gap > mantissa_bits::<T>() {
            return *big;
        }
        Self::new(
            big.mantissa + small.mantissa * pow2::<T>(-gap),
            big.exponent,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&-*other)
    }
}

impl<T: Real> Neg for ScaledComplex<T> {
    type Output = Self;
    fn neg(self) -> Self {
        ScaledComplex {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl<T: Real> Mul for ScaledComplex<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::new(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl<T: Real> Div for ScaledComplex<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self::new(self.mantissa / rhs.mantissa, self.exponent - rhs.exponent)
    }
}

/// Binary digits of the mantissa plus a margin; addends smaller by more
/// than this are negligible.
fn mantissa_bits<T: Real>() -> i64 {
    (-T::epsilon().log2()).to_i64().unwrap_or(64) + 4
}
