//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

use crate::dd::DoubleDouble;

/// Real floating point type the library is generic over.
///
/// Implemented for `f32`, `f64` and [`DoubleDouble`].
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Square root correct to the working precision of the type.
    fn precise_sqrt(self) -> Self {
        self.sqrt()
    }

    /// Converts an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts a count or index.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    /// Lossy conversion to `f64` for reporting.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

impl Real for DoubleDouble {}

/// Complex number over a [`Real`].
pub type C<T> = Complex<T>;

/// Modulus of a complex number, computed with [`Real::precise_sqrt`].
pub fn cabs<T: Real>(z: Complex<T>) -> T {
    let a = z.re.abs();
    let b = z.im.abs();
    let (big, small) = if a >= b { (a, b) } else { (b, a) };
    if big == T::zero() {
        return T::zero();
    }
    let q = small / big;
    big * (T::one() + q * q).precise_sqrt()
}

/// Unit phase `z/|z|`, or one for zero input.
pub fn phase<T: Real>(z: Complex<T>) -> Complex<T> {
    let r = cabs(z);
    if r == T::zero() {
        Complex::new(T::one(), T::zero())
    } else {
        Complex::new(z.re / r, z.im / r)
    }
}

/// Principal square root of a complex number.
///
/// Exactly covariant under conjugation.
pub fn csqrt<T: Real>(z: Complex<T>) -> Complex<T> {
    let two = T::lit(2.0);
    if z.re == T::zero() && z.im == T::zero() {
        return Complex::new(T::zero(), T::zero());
    }
    let r = cabs(z);
    if z.re >= T::zero() {
        let a = ((r + z.re) / two).precise_sqrt();
        Complex::new(a, z.im / (a + a))
    } else {
        let b = ((r - z.re) / two).precise_sqrt();
        let b = if z.im < T::zero() { -b } else { b };
        Complex::new(z.im / (b + b), b)
    }
}

/// `e^{i t}` as a complex number.
pub fn cis<T: Real>(t: T) -> Complex<T> {
    let (s, c) = t.sin_cos();
    Complex::new(c, s)
}

/// `2^k` without overflow in intermediate powers.
pub fn pow2<T: Real>(k: i64) -> T {
    const STEP: i64 = 60;
    let two = T::lit(2.0);
    if k.abs() <= STEP {
        return two.powi(k as i32);
    }
    let chunk = if k > 0 {
        two.powi(STEP as i32)
    } else {
        two.powi(-STEP as i32)
    };
    let mut rem = k;
    let mut acc = T::one();
    while rem.abs() > STEP {
        acc *= chunk;
        rem -= STEP * rem.signum();
        if acc == T::zero() || acc.is_infinite() {
            return acc;
        }
    }
    acc * two.powi(rem as i32)
}
