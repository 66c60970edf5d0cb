//! Normalized Hermite functions and polynomials at complex arguments.

use num_complex::Complex;

use super::scaled::ScaledComplex;
use crate::scalar::{pow2, Real};

/// Recurrence coefficients `(sqrt(2/(k+1)), sqrt(k/(k+1)))`.
#[inline]
fn coeffs<T: Real>(k: usize) -> (T, T) {
    let kp = T::from_count(k + 1);
    (
        (T::lit(2.0) / kp).precise_sqrt(),
        (T::from_count(k) / kp).precise_sqrt(),
    )
}

/// `pi^{-1/4}`.
pub fn pi_quarter_inv<T: Real>() -> T {
    T::one() / T::PI().precise_sqrt().precise_sqrt()
}

/// Three-term recurrence `p_{k+1} = sqrt(2/(k+1)) z p_k - sqrt(k/(k+1)) p_{k-1}`
/// run on raw mantissas that share one binary exponent.
#[derive(Clone, Copy, Debug)]
pub struct HermiteRecurrence<T> {
    z: Complex<T>,
    k: usize,
    prev: Complex<T>,
    cur: Complex<T>,
    exponent: i64,
}

impl<T: Real> HermiteRecurrence<T> {
    /// Starts at degree zero with value `start`.
    pub fn new(z: Complex<T>, start: ScaledComplex<T>) -> Self {
        HermiteRecurrence {
            z,
            k: 0,
            prev: Complex::new(T::zero(), T::zero()),
            cur: start.mantissa(),
            exponent: start.exponent(),
        }
    }

    /// Orthonormal polynomials for the weight `e^{-x^2}`, no Gaussian factor.
    pub fn polynomial(z: Complex<T>) -> Self {
        Self::new(z, ScaledComplex::from_real(pi_quarter_inv()))
    }

    /// Hermite functions, Gaussian factor `e^{-z^2/2}` folded into the start.
    pub fn function(z: Complex<T>) -> Self {
        let g = ScaledComplex::exp(-(z * z).scale(T::lit(0.5)));
        Self::new(z, g.scale(Complex::new(pi_quarter_inv(), T::zero())))
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn current(&self) -> ScaledComplex<T> {
        ScaledComplex::new(self.cur, self.exponent)
    }

    pub fn previous(&self) -> ScaledComplex<T> {
        ScaledComplex::new(self.prev, self.exponent)
    }

    /// Current and previous values as raw mantissas with their shared
    /// exponent.
    pub fn raw(&self) -> (Complex<T>, Complex<T>, i64) {
        (self.cur, self.prev, self.exponent)
    }

    pub fn step(&mut self) {
        let (a, b) = coeffs::<T>(self.k);
        let next = (self.z * self.cur).scale(a) - self.prev.scale(b);
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        let big = self
            .cur
            .re
            .abs()
            .max(self.cur.im.abs())
            .max(self.prev.re.abs().max(self.prev.im.abs()));
        let limit = rescale_limit::<T>();
        if big > pow2::<T>(limit) || (big < pow2::<T>(-limit) && big > T::zero()) {
            let shift = big.log2().floor().to_i64().unwrap_or(0);
            let f = pow2::<T>(-shift);
            self.cur = self.cur.scale(f);
            self.prev = self.prev.scale(f);
            self.exponent += shift;
        }
    }

    pub fn advance_to(&mut self, n: usize) {
        while self.k < n {
            self.step();
        }
    }
}

fn rescale_limit<T: Real>() -> i64 {
    T::max_value().log2().to_i64().unwrap_or(128) / 4
}

/// Normalized Hermite function `h_n(z) = (2^n n! sqrt(pi))^{-1/2} H_n(z) e^{-z^2/2}`.
pub fn hermite_function<T: Real>(n: usize, z: Complex<T>) -> ScaledComplex<T> {
    let mut r = HermiteRecurrence::function(z);
    r.advance_to(n);
    r.current()
}

/// `h_0(z), ..., h_{n_max}(z)`.
pub fn hermite_function_sequence<T: Real>(n_max: usize, z: Complex<T>) -> Vec<ScaledComplex<T>> {
    let mut r = HermiteRecurrence::function(z);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(r.current());
    for _ in 0..n_max {
        r.step();
        out.push(r.current());
    }
    out
}

/// Orthonormal Hermite polynomial `q_n(z) = h_n(z) e^{z^2/2}`.
pub fn hermite_polynomial<T: Real>(n: usize, z: Complex<T>) -> ScaledComplex<T> {
    let mut r = HermiteRecurrence::polynomial(z);
    r.advance_to(n);
    r.current()
}

/// `q_0(z), ..., q_{n_max}(z)`.
pub fn hermite_polynomial_sequence<T: Real>(n_max: usize, z: Complex<T>) -> Vec<ScaledComplex<T>> {
    let mut r = HermiteRecurrence::polynomial(z);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(r.current());
    for _ in 0..n_max {
        r.step();
        out.push(r.current());
    }
    out
}
