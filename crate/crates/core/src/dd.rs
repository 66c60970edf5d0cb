//! Double-double real type.
//!
//! Addition, multiplication and formatting come from `twofloat`. Division,
//! square root, the elementary functions and conversions are computed here
//! because the upstream versions lose 10 to 15 digits.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::num::FpCategory;
use std::ops::{
    Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign,
};

use num_traits::{Float, FloatConst, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};
use twofloat::TwoFloat;

/// Unevaluated sum `hi + lo` of two `f64` values, about 32 significant digits.
#[derive(Clone, Copy, Debug, Default)]
pub struct DoubleDouble(TwoFloat);

impl DoubleDouble {
    /// Builds `hi + lo`, renormalizing the pair.
    pub fn new(hi: f64, lo: f64) -> Self {
        DoubleDouble(TwoFloat::new_add(hi, lo))
    }

    /// Leading component.
    pub fn hi(self) -> f64 {
        self.0.hi()
    }

    /// Trailing component.
    pub fn lo(self) -> f64 {
        self.0.lo()
    }

    fn splat(x: f64) -> Self {
        DoubleDouble(TwoFloat::from_f64(x))
    }

    fn mul_f64(self, x: f64) -> Self {
        DoubleDouble(self.0 * x)
    }

    // exact scaling by 2^k
    fn ldexp(self, k: i32) -> Self {
        let mut x = self;
        let mut k = k;
        while k != 0 {
            let step = k.clamp(-1000, 1000);
            let f = 2f64.powi(step);
            x = DoubleDouble::new(x.hi() * f, x.lo() * f);
            k -= step;
        }
        x
    }

    fn div_f64(self, b: f64) -> Self {
        self / Self::splat(b)
    }

    fn from_i128(n: i128) -> Self {
        let hi = n as f64;
        let rest = n - hi as i128;
        DoubleDouble::new(hi, rest as f64)
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::splat(x)
    }
}

impl From<DoubleDouble> for f64 {
    fn from(x: DoubleDouble) -> f64 {
        x.hi() + x.lo()
    }
}

// lexicographic on (hi, lo); upstream orders every infinity above all
// finite values
impl PartialEq for DoubleDouble {
    fn eq(&self, other: &Self) -> bool {
        self.hi() == other.hi() && (self.lo() == other.lo() || self.hi().is_infinite())
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi().partial_cmp(&other.hi())? {
            Ordering::Equal if self.hi().is_finite() => self.lo().partial_cmp(&other.lo()),
            ord => Some(ord),
        }
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::LowerExp for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerExp::fmt(&self.0, f)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble(-self.0)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        DoubleDouble(self.0 + rhs.0)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        DoubleDouble(self.0 - rhs.0)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        DoubleDouble(self.0 * rhs.0)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    // three f64 quotient digits, each one correcting the remainder of the last
    fn div(self, rhs: Self) -> Self {
        let b = rhs.hi();
        let q1 = self.hi() / b;
        if !q1.is_finite() || q1 == 0.0 || !b.is_finite() {
            return Self::splat(q1);
        }
        let r = self - rhs.mul_f64(q1);
        let q2 = r.hi() / b;
        let r = r - rhs.mul_f64(q2);
        let q3 = r.hi() / b;
        DoubleDouble::new(q1, q2) + Self::splat(q3)
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, rhs: Self) -> Self {
        let q = (self / rhs).trunc();
        self - q * rhs
    }
}

macro_rules! assign_op {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr for DoubleDouble {
            fn $f(&mut self, rhs: Self) {
                *self = *self $op rhs;
            }
        }
    };
}

assign_op!(AddAssign, add_assign, +);
assign_op!(SubAssign, sub_assign, -);
assign_op!(MulAssign, mul_assign, *);
assign_op!(DivAssign, div_assign, /);
assign_op!(RemAssign, rem_assign, %);

impl Sum for DoubleDouble {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl Product for DoubleDouble {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| a * b)
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        Self::splat(0.0)
    }
    fn is_zero(&self) -> bool {
        self.hi() == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        Self::splat(1.0)
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = <f64 as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        f64::from_str_radix(s, radix).map(Self::splat)
    }
}

impl ToPrimitive for DoubleDouble {
    fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.hi() + self.lo())
    }
}

impl FromPrimitive for DoubleDouble {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Self::from_i128(n as i128))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Self::from_i128(n as i128))
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(Self::splat(x))
    }
}

impl NumCast for DoubleDouble {
    fn from<N: ToPrimitive>(n: N) -> Option<Self> {
        let f = n.to_f64()?;
        // large integers keep their low bits
        if f.fract() == 0.0 && f.abs() > 9.0e15 {
            if let Some(i) = n.to_i64() {
                return Self::from_i64(i);
            }
            if let Some(u) = n.to_u64() {
                return Self::from_u64(u);
            }
        }
        Some(Self::splat(f))
    }
}

macro_rules! consts {
    ($($name:ident = ($hi:expr, $lo:expr)),* $(,)?) => {
        // hi parts are the f64 roundings by construction
        #[allow(clippy::approx_constant)]
        impl FloatConst for DoubleDouble {
            $(fn $name() -> Self { DoubleDouble::new($hi, $lo) })*
        }
    };
}

consts! {
    E = (2.718281828459045, 1.4456468917292502e-16),
    FRAC_1_PI = (0.3183098861837907, -1.9678676675182486e-17),
    FRAC_1_SQRT_2 = (0.7071067811865476, -4.833646656726457e-17),
    FRAC_2_PI = (0.6366197723675814, -3.935735335036497e-17),
    FRAC_2_SQRT_PI = (1.1283791670955126, 1.533545961316588e-17),
    FRAC_PI_2 = (1.5707963267948966, 6.123233995736766e-17),
    FRAC_PI_3 = (1.0471975511965979, -1.072081766451091e-16),
    FRAC_PI_4 = (0.7853981633974483, 3.061616997868383e-17),
    FRAC_PI_6 = (0.5235987755982989, -5.360408832255455e-17),
    FRAC_PI_8 = (0.39269908169872414, 1.5308084989341915e-17),
    LN_10 = (2.302585092994046, -2.1707562233822494e-16),
    LN_2 = (0.6931471805599453, 2.3190468138462996e-17),
    LOG10_E = (0.4342944819032518, 1.098319650216765e-17),
    LOG2_E = (1.4426950408889634, 2.0355273740931033e-17),
    PI = (3.141592653589793, 1.2246467991473532e-16),
    SQRT_2 = (1.4142135623730951, -9.667293313452913e-17),
    TAU = (6.283185307179586, 2.4492935982947064e-16),
    LOG10_2 = (0.3010299956639812, -2.8037281277851704e-18),
    LOG2_10 = (3.321928094887362, 1.661617516973592e-16),
}

// sin and cos of |r| <= pi/4 by Taylor series
fn sin_cos_reduced(r: DoubleDouble) -> (DoubleDouble, DoubleDouble) {
    let r2 = r * r;
    let tiny = 1e-34;
    let mut s = r;
    let mut term = r;
    let mut k = 1.0;
    while term.hi().abs() > tiny * s.hi().abs().max(tiny) {
        term = -(term * r2).div_f64((k + 1.0) * (k + 2.0));
        s += term;
        k += 2.0;
    }
    let mut c = DoubleDouble::one();
    let mut term = DoubleDouble::one();
    let mut k = 0.0;
    while term.hi().abs() > tiny {
        term = -(term * r2).div_f64((k + 1.0) * (k + 2.0));
        c += term;
        k += 2.0;
    }
    (s, c)
}

// e^r - 1 for |r| <= ln2 / 2
fn exp_m1_reduced(r: DoubleDouble) -> DoubleDouble {
    const HALVINGS: i32 = 10;
    let r = r.ldexp(-HALVINGS);
    let mut s = r;
    let mut term = r;
    let mut k = 2.0;
    while term.hi().abs() > 1e-36 * s.hi().abs().max(1e-300) {
        term = (term * r).div_f64(k);
        s += term;
        k += 1.0;
    }
    // (1+s)^2 - 1 = 2s + s^2 keeps the small quantity
    for _ in 0..HALVINGS {
        s = s.ldexp(1) + s * s;
    }
    s
}

impl Float for DoubleDouble {
    fn nan() -> Self {
        Self::splat(f64::NAN)
    }
    fn infinity() -> Self {
        Self::splat(f64::INFINITY)
    }
    fn neg_infinity() -> Self {
        Self::splat(f64::NEG_INFINITY)
    }
    fn neg_zero() -> Self {
        Self::splat(-0.0)
    }
    fn min_value() -> Self {
        Self::splat(f64::MIN)
    }
    fn min_positive_value() -> Self {
        Self::splat(f64::MIN_POSITIVE)
    }
    fn epsilon() -> Self {
        Self::splat(2f64.powi(-104))
    }
    fn max_value() -> Self {
        Self::splat(f64::MAX)
    }
    fn is_nan(self) -> bool {
        self.hi().is_nan()
    }
    fn is_infinite(self) -> bool {
        self.hi().is_infinite()
    }
    fn is_finite(self) -> bool {
        self.hi().is_finite()
    }
    fn is_normal(self) -> bool {
        self.hi().is_normal()
    }
    fn classify(self) -> FpCategory {
        self.hi().classify()
    }
    fn floor(self) -> Self {
        DoubleDouble(self.0.floor())
    }
    fn ceil(self) -> Self {
        DoubleDouble(self.0.ceil())
    }
    fn round(self) -> Self {
        DoubleDouble(self.0.round())
    }
    fn trunc(self) -> Self {
        DoubleDouble(self.0.trunc())
    }
    fn fract(self) -> Self {
        self - self.trunc()
    }
    fn abs(self) -> Self {
        if self.hi() < 0.0 {
            -self
        } else {
            self
        }
    }
    fn signum(self) -> Self {
        Self::splat(self.hi().signum())
    }
    fn is_sign_positive(self) -> bool {
        self.hi().is_sign_positive()
    }
    fn is_sign_negative(self) -> bool {
        self.hi().is_sign_negative()
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }
    fn recip(self) -> Self {
        Self::one() / self
    }
    fn powi(self, n: i32) -> Self {
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }
    fn powf(self, n: Self) -> Self {
        if self.hi() <= 0.0 || !self.is_finite() || !n.is_finite() {
            return Self::splat(self.hi().powf(n.hi()));
        }
        (n * self.ln()).exp()
    }
    fn sqrt(self) -> Self {
        let x = self.hi();
        if x <= 0.0 || !x.is_finite() {
            return Self::splat(x.sqrt());
        }
        let r = x.sqrt();
        let d = self - DoubleDouble(TwoFloat::new_mul(r, r));
        DoubleDouble::new(r, d.hi() / (2.0 * r))
    }
    fn exp(self) -> Self {
        let x = self.hi();
        if x.is_nan() {
            return self;
        }
        if x > 709.8 {
            return Self::infinity();
        }
        if x < -745.2 {
            return Self::zero();
        }
        let k = (x / std::f64::consts::LN_2).round();
        let r = self - Self::LN_2().mul_f64(k);
        (exp_m1_reduced(r) + Self::one()).ldexp(k as i32)
    }
    fn exp2(self) -> Self {
        (self * Self::LN_2()).exp()
    }
    fn ln(self) -> Self {
        let x = self.hi();
        if x <= 0.0 || !x.is_finite() {
            return Self::splat(x.ln());
        }
        let mut y = Self::splat(x.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Self::one();
        }
        y
    }
    fn log(self, base: Self) -> Self {
        self.ln() / base.ln()
    }
    fn log2(self) -> Self {
        self.ln() * Self::LOG2_E()
    }
    fn log10(self) -> Self {
        self.ln() * Self::LOG10_E()
    }
    fn max(self, other: Self) -> Self {
        if self.is_nan() || other > self {
            other
        } else {
            self
        }
    }
    fn min(self, other: Self) -> Self {
        if self.is_nan() || other < self {
            other
        } else {
            self
        }
    }
    fn abs_sub(self, other: Self) -> Self {
        (self - other).max(Self::zero())
    }
    fn cbrt(self) -> Self {
        let x = self.hi();
        if x == 0.0 || !x.is_finite() {
            return Self::splat(x.cbrt());
        }
        let y = Self::splat(x.cbrt());
        y - (y * y * y - self) / (y * y).mul_f64(3.0)
    }
    fn hypot(self, other: Self) -> Self {
        let (a, b) = (self.abs(), other.abs());
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big.is_zero() || !big.is_finite() {
            return big;
        }
        let q = small / big;
        big * (Self::one() + q * q).sqrt()
    }
    fn sin(self) -> Self {
        self.sin_cos().0
    }
    fn cos(self) -> Self {
        self.sin_cos().1
    }
    fn tan(self) -> Self {
        let (s, c) = self.sin_cos();
        s / c
    }
    fn asin(self) -> Self {
        self.atan2((Self::one() - self * self).sqrt())
    }
    fn acos(self) -> Self {
        (Self::one() - self * self).sqrt().atan2(self)
    }
    fn atan(self) -> Self {
        self.atan2(Self::one())
    }
    fn atan2(self, other: Self) -> Self {
        let (y, x) = (self, other);
        let seed = y.hi().atan2(x.hi());
        if (y.is_zero() && x.is_zero()) || !seed.is_finite() || !y.is_finite() || !x.is_finite() {
            return Self::splat(seed);
        }
        let mut a = Self::splat(seed);
        for _ in 0..2 {
            let (s, c) = a.sin_cos();
            a += (y * c - x * s) / (x * c + y * s);
        }
        a
    }
    fn sin_cos(self) -> (Self, Self) {
        if !self.is_finite() {
            return (Self::nan(), Self::nan());
        }
        let k = (self.hi() / std::f64::consts::FRAC_PI_2).round();
        let r = self - Self::FRAC_PI_2().mul_f64(k);
        let (s, c) = sin_cos_reduced(r);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
    fn exp_m1(self) -> Self {
        if self.hi().abs() <= 0.34 {
            exp_m1_reduced(self)
        } else {
            self.exp() - Self::one()
        }
    }
    fn ln_1p(self) -> Self {
        let u = Self::one() + self;
        if u == Self::one() {
            return self;
        }
        u.ln() * self / (u - Self::one())
    }
    fn sinh(self) -> Self {
        let e = self.exp_m1();
        // (e^x - e^-x)/2 with e = e^x - 1
        (e + e / (e + Self::one())).ldexp(-1)
    }
    fn cosh(self) -> Self {
        let e = self.exp();
        (e + e.recip()).ldexp(-1)
    }
    fn tanh(self) -> Self {
        let e = self.ldexp(1).exp_m1();
        e / (e + Self::splat(2.0))
    }
    fn asinh(self) -> Self {
        let a = self.abs();
        let r = (a + (a * a + Self::one()).sqrt()).ln();
        if self.is_sign_negative() {
            -r
        } else {
            r
        }
    }
    fn acosh(self) -> Self {
        (self + (self * self - Self::one()).sqrt()).ln()
    }
    fn atanh(self) -> Self {
        ((Self::one() + self) / (Self::one() - self)).ln().ldexp(-1)
    }
    fn integer_decode(self) -> (u64, i16, i8) {
        self.hi().integer_decode()
    }
}
