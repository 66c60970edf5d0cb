//! Elementary unitary transformations.
//!
//! Both kinds are built only from moduli, unit phases and real scalings, so
//! they commute exactly with multiplication of the data by `±1` and `±i`
//! and with complex conjugation.

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::{cabs, phase, Real};

/// Hermitian reflector `I - tau v v*` mapping `x` onto `beta e_0`.
#[derive(Clone, Debug)]
pub struct Reflector<T> {
    pub v: Vec<Complex<T>>,
    pub tau: T,
    pub beta: Complex<T>,
}

impl<T: Real> Reflector<T> {
    pub fn new(x: &[Complex<T>]) -> Self {
        let alpha = x[0];
        let tail: T = x[1..].iter().fold(T::zero(), |s, z| s + z.norm_sqr());
        if tail == T::zero() {
            return Reflector {
                v: x.to_vec(),
                tau: T::zero(),
                beta: alpha,
            };
        }
        let abs_alpha = cabs(alpha);
        let xnorm = (alpha.norm_sqr() + tail).precise_sqrt();
        let ph = phase(alpha);
        let beta = -ph.scale(xnorm);
        let mut v = x.to_vec();
        v[0] = ph.scale(abs_alpha + xnorm);
        let tau = T::one() / (xnorm * (xnorm + abs_alpha));
        Reflector { v, tau, beta }
    }

    pub fn is_identity(&self) -> bool {
        self.tau == T::zero()
    }

    /// `y <- (I - tau v v*) y`.
    pub fn apply(&self, y: &mut [Complex<T>]) {
        if self.is_identity() {
            return;
        }
        let w = self
            .v
            .iter()
            .zip(y.iter())
            .fold(Complex::zero(), |acc, (&v, &y)| acc + v.conj() * y);
        let w = w.scale(self.tau);
        for (yi, &vi) in y.iter_mut().zip(&self.v) {
            *yi -= w * vi;
        }
    }
}

/// Plane rotation `[[c, s], [-conj(s), c]]` with real `c`.
#[derive(Clone, Copy, Debug)]
pub struct Givens<T> {
    pub c: T,
    pub s: Complex<T>,
}

impl<T: Real> Givens<T> {
    /// Rotation sending `(a, b)` to `(r, 0)`; also returns `r`.
    pub fn new(a: Complex<T>, b: Complex<T>) -> (Self, Complex<T>) {
        if b.is_zero() {
            return (
                Givens {
                    c: T::one(),
                    s: Complex::zero(),
                },
                a,
            );
        }
        if a.is_zero() {
            return (
                Givens {
                    c: T::zero(),
                    s: Complex::new(T::one(), T::zero()),
                },
                b,
            );
        }
        let abs_a = cabs(a);
        let abs_b = cabs(b);
        let big = abs_a.max(abs_b);
        let r = big * ((abs_a / big).powi(2) + (abs_b / big).powi(2)).precise_sqrt();
        let ph = phase(a);
        let c = abs_a / r;
        let s = (ph * b.conj()).unscale(r);
        (Givens { c, s }, ph.scale(r))
    }

    /// Row form: `(x, y) <- (c x + s y, -conj(s) x + c y)`.
    #[inline]
    pub fn rotate(&self, x: Complex<T>, y: Complex<T>) -> (Complex<T>, Complex<T>) {
        (
            x.scale(self.c) + self.s * y,
            y.scale(self.c) - self.s.conj() * x,
        )
    }

    /// Column form, the adjoint acting from the right:
    /// `(x, y) <- (c x + conj(s) y, -s x + c y)`.
    #[inline]
    pub fn rotate_adjoint(&self, x: Complex<T>, y: Complex<T>) -> (Complex<T>, Complex<T>) {
        (
            x.scale(self.c) + self.s.conj() * y,
            y.scale(self.c) - self.s * x,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflector_maps_to_axis() {
        let x = vec![
            Complex::new(0.3, -1.2),
            Complex::new(2.0, 0.5),
            Complex::new(-0.7, 0.1),
        ];
        let h = Reflector::new(&x);
        let mut y = x.clone();
        h.apply(&mut y);
        assert!((y[0] - h.beta).norm() < 1e-14);
        assert!(y[1].norm() < 1e-14 && y[2].norm() < 1e-14);
        let n: f64 = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((h.beta.norm() - n).abs() < 1e-14);
    }

    #[test]
    fn givens_zeroes_second() {
        let a = Complex::new(1.5, 2.0);
        let b = Complex::new(-0.5, 0.25);
        let (g, r) = Givens::new(a, b);
        let (x, y) = g.rotate(a, b);
        assert!((x - r).norm() < 1e-15 && y.norm() < 1e-15);
        let (p, q) = (Complex::new(0.2, 0.1), Complex::new(-3.0, 1.0));
        let (g, _) = Givens::new(p.conj(), q.conj());
        let (_, y) = g.rotate_adjoint(p, q);
        assert!(y.norm() < 1e-14);
    }
}
