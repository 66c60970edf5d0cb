//! LU factorization with partial pivoting.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::{cabs, Real};

#[derive(Clone, Debug)]
pub struct Lu<T> {
    lu: CMatrix<T>,
    perm: Vec<usize>,
}

impl<T: Real> Lu<T> {
    pub fn new(a: &CMatrix<T>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Dimension("LU needs a square matrix".into()));
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut piv = k;
            let mut best = cabs(lu[(k, k)]);
            for r in k + 1..n {
                let v = cabs(lu[(r, k)]);
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best == T::zero() || !best.is_finite() {
                return Err(Error::Singular);
            }
            if piv != k {
                for c in 0..n {
                    let t = lu[(k, c)];
                    lu[(k, c)] = lu[(piv, c)];
                    lu[(piv, c)] = t;
                }
                perm.swap(k, piv);
            }
            let inv = Complex::new(T::one(), T::zero()) / lu[(k, k)];
            let pivot_row: Vec<Complex<T>> = lu.row(k)[k + 1..].to_vec();
            for r in k + 1..n {
                let f = lu[(r, k)] * inv;
                lu[(r, k)] = f;
                if f.is_zero() {
                    continue;
                }
                let row = &mut lu.row_mut(r)[k + 1..];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
            }
        }
        Ok(Lu { lu, perm })
    }

    pub fn solve(&self, b: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.lu.rows();
        let mut x: Vec<Complex<T>> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 0..n {
            let row = self.lu.row(r);
            let mut s = x[r];
            for c in 0..r {
                s -= row[c] * x[c];
            }
            x[r] = s;
        }
        for r in (0..n).rev() {
            let row = self.lu.row(r);
            let mut s = x[r];
            for c in r + 1..n {
                s -= row[c] * x[c];
            }
            x[r] = s / row[r];
        }
        x
    }

    pub fn inverse(&self) -> CMatrix<T> {
        let n = self.lu.rows();
        let mut inv = CMatrix::zeros(n, n);
        let mut e = vec![Complex::zero(); n];
        for c in 0..n {
            e.iter_mut().for_each(|x| *x = Complex::zero());
            e[c] = Complex::new(T::one(), T::zero());
            let col = self.solve(&e);
            for r in 0..n {
                inv[(r, c)] = col[r];
            }
        }
        inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let a = CMatrix::from_fn(5, 5, |r, c| {
            Complex::new(
                1.0 / (1.0 + r as f64 + c as f64),
                if r == c {
                    2.0
                } else {
                    0.1 * (r as f64 - c as f64)
                },
            )
        });
        let inv = Lu::new(&a).unwrap().inverse();
        let prod = a.matmul(&inv).unwrap();
        assert!(prod.max_abs_diff(&CMatrix::identity(5)).unwrap() < 1e-13);
    }

    #[test]
    fn singular_detected() {
        let a = CMatrix::<f64>::zeros(3, 3);
        assert_eq!(Lu::new(&a).unwrap_err(), Error::Singular);
    }
}
