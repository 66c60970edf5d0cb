//! Gauss–Hermite quadrature for the weight `e^{-x^2}`.

use num_complex::Complex;

use super::hermite::HermiteRecurrence;
use super::scaled::ScaledComplex;
use crate::error::{Error, Result};
use crate::linalg::symmetric_tridiagonal_eigen;
use crate::scalar::Real;

/// Nodes and weights of a Gauss rule. Weights are kept in scaled form
/// because the outer ones underflow for large rules.
#[derive(Clone, Debug)]
pub struct QuadratureRule<T> {
    nodes: Vec<T>,
    weights: Vec<ScaledComplex<T>>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Abscissae, strictly increasing and symmetric about zero.
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn scaled_weights(&self) -> &[ScaledComplex<T>] {
        &self.weights
    }

    /// Weights as plain numbers; tiny ones flush to zero.
    pub fn weights(&self) -> Vec<T> {
        self.weights.iter().map(|w| w.to_complex().re).collect()
    }

    /// `sum_i w_i f(x_i)`, accumulated in scaled form.
    pub fn integrate(&self, mut f: impl FnMut(T) -> ScaledComplex<T>) -> ScaledComplex<T> {
        let k = self.len();
        let mut acc = ScaledComplex::zero();
        // mirror pairs first so odd integrands cancel exactly
        for i in 0..k / 2 {
            let a = self.weights[i] * f(self.nodes[i]);
            let b = self.weights[k - 1 - i] * f(self.nodes[k - 1 - i]);
            acc = acc.add(&a.add(&b));
        }
        if k % 2 == 1 {
            acc = acc.add(&(self.weights[k / 2] * f(self.nodes[k / 2])));
        }
        acc
    }
}

/// `k`-point Gauss–Hermite rule.
///
/// Golub–Welsch eigenvalues of the Jacobi matrix seed a Newton polish in the
/// working precision; weights follow from the Christoffel–Darboux identity
/// `w_i = 1 / (k q_{k-1}(x_i)^2)` with `q` the orthonormal polynomials.
pub fn gauss_hermite<T: Real>(k: usize) -> Result<QuadratureRule<T>> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "quadrature rule needs at least one node".into(),
        ));
    }
    let diag = vec![0.0f64; k];
    let off: Vec<f64> = (1..k).map(|j| (j as f64 / 2.0).sqrt()).collect();
    let (seed, _) = symmetric_tridiagonal_eigen(&diag, &off, false)?;
    let root2k = (T::lit(2.0) * T::from_count(k)).precise_sqrt();
    let mut nodes: Vec<T> = seed
        .iter()
        .map(|&x0| {
            let mut x = T::lit(x0);
            for _ in 0..8 {
                let mut r = HermiteRecurrence::polynomial(Complex::new(x, T::zero()));
                r.advance_to(k);
                let (cur, prev, _) = r.raw();
                let dx = cur.re / (prev.re * root2k);
                x -= dx;
                if dx.abs() <= T::epsilon() * x.abs().max(T::one()) {
                    break;
                }
            }
            x
        })
        .collect();
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let half = T::lit(0.5);
    for i in 0..k / 2 {
        let x = (nodes[k - 1 - i] - nodes[i]) * half;
        nodes[i] = -x;
        nodes[k - 1 - i] = x;
    }
    if k % 2 == 1 {
        nodes[k / 2] = T::zero();
    }
    let kk = Complex::new(T::from_count(k), T::zero());
    let weights = nodes
        .iter()
        .map(|&x| {
            let mut r = HermiteRecurrence::polynomial(Complex::new(x, T::zero()));
            r.advance_to(k - 1);
            ScaledComplex::one() / r.current().norm_sqr().scale(kk)
        })
        .collect();
    Ok(QuadratureRule { nodes, weights })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rules() {
        let sp = std::f64::consts::PI.sqrt();
        let r1 = gauss_hermite::<f64>(1).unwrap();
        assert_eq!(r1.nodes(), &[0.0]);
        assert!((r1.weights()[0] - sp).abs() < 1e-15);
        let r2 = gauss_hermite::<f64>(2).unwrap();
        let h = 0.5f64.sqrt();
        assert!((r2.nodes()[1] - h).abs() < 1e-15 && r2.nodes()[0] == -r2.nodes()[1]);
        for w in r2.weights() {
            assert!((w - sp / 2.0).abs() < 1e-15);
        }
        assert!(gauss_hermite::<f64>(0).is_err());
    }

    #[test]
    fn large_rule_has_underflowing_weights_in_scaled_form() {
        let r = gauss_hermite::<f64>(600).unwrap();
        let w = r.scaled_weights();
        assert!(w[0].ln_abs() < -750.0);
        let total = r.integrate(|_| ScaledComplex::one()).to_complex().re;
        assert!((total - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }
}
