//! Hermitian eigenproblems.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::CMatrix;
use super::rot::Reflector;
use super::tridiag::symmetric_tridiagonal_eigen;
use crate::error::{Error, Result};
use crate::scalar::{cabs, phase, Real};

/// Eigenvalues and eigenvectors (columns) of a Hermitian matrix by cyclic
/// Jacobi rotations. Eigenvalues ascending. Intended for small orders.
pub fn hermitian_eigen<T: Real>(a: &CMatrix<T>) -> Result<(Vec<T>, CMatrix<T>)> {
    if !a.is_square() {
        return Err(Error::Dimension(
            "Hermitian eigenproblem needs a square matrix".into(),
        ));
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut v = CMatrix::identity(n);
    let total = m.frobenius();
    let eps = T::epsilon();
    let mut converged = n < 2;
    for _sweep in 0..60 {
        let mut off = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off.precise_sqrt() <= eps * total || off == T::zero() {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let mag = cabs(apq);
                if mag == T::zero() {
                    continue;
                }
                let ph = phase(apq);
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let theta = (aqq - app) / (T::lit(2.0) * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).precise_sqrt());
                let t = if theta == T::zero() { T::one() } else { t };
                let c = T::one() / (t * t + T::one()).precise_sqrt();
                let s = t * c;
                // J = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on (p, q)
                let em = ph.conj();
                for r in 0..n {
                    let x = m[(r, p)];
                    let y = m[(r, q)];
                    m[(r, p)] = x.scale(c) - y * em.scale(s);
                    m[(r, q)] = x.scale(s) + y * em.scale(c);
                }
                for col in 0..n {
                    let x = m[(p, col)];
                    let y = m[(q, col)];
                    m[(p, col)] = x.scale(c) - y * ph.scale(s);
                    m[(q, col)] = x.scale(s) + y * ph.scale(c);
                }
                m[(p, q)] = Complex::zero();
                m[(q, p)] = Complex::zero();
                m[(p, p)] = Complex::new(m[(p, p)].re, T::zero());
                m[(q, q)] = Complex::new(m[(q, q)].re, T::zero());
                for r in 0..n {
                    let x = v[(r, p)];
                    let y = v[(r, q)];
                    v[(r, p)] = x.scale(c) - y * em.scale(s);
                    v[(r, q)] = x.scale(s) + y * em.scale(c);
                }
            }
        }
    }
    if !converged {
        return Err(Error::EigenNoConvergence { iterations: 60 });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        m[(x, x)]
            .re
            .partial_cmp(&m[(y, y)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&k| m[(k, k)].re).collect();
    let vecs = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok((values, vecs))
}

/// Eigenvalues (ascending) of a Hermitian matrix via Householder
/// tridiagonalization and implicit QL.
pub fn hermitian_eigenvalues<T: Real>(a: &CMatrix<T>) -> Result<Vec<T>> {
    if !a.is_square() {
        return Err(Error::Dimension(
            "Hermitian eigenproblem needs a square matrix".into(),
        ));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut m = a.clone();
    let mut col = Vec::with_capacity(n);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex<T>> = (k + 1..n).map(|r| m[(r, k)]).collect();
        let h = Reflector::new(&x);
        if h.is_identity() {
            continue;
        }
        for c in 0..n {
            col.clear();
            col.extend((k + 1..n).map(|r| m[(r, c)]));
            h.apply(&mut col);
            for (i, &v) in col.iter().enumerate() {
                m[(k + 1 + i, c)] = v;
            }
        }
        for r in 0..n {
            let row = &mut m.row_mut(r)[k + 1..];
            let s = row
                .iter()
                .zip(&h.v)
                .fold(Complex::zero(), |acc, (&y, &v)| acc + y * v);
            let s = s.scale(h.tau);
            for (y, &v) in row.iter_mut().zip(&h.v) {
                *y -= s * v.conj();
            }
        }
    }
    let diag: Vec<T> = (0..n).map(|k| m[(k, k)].re).collect();
    let off: Vec<T> = (0..n - 1).map(|k| cabs(m[(k + 1, k)])).collect();
    Ok(symmetric_tridiagonal_eigen(&diag, &off, false)?.0)
}
