//! Singular values of dense matrices and of real bidiagonal matrices.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::CMatrix;
use super::rot::Reflector;
use crate::error::{Error, Result};
use crate::scalar::{cabs, Real};

/// Real upper bidiagonal matrix with diagonal `d` and superdiagonal `e`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bidiagonal<T> {
    pub d: Vec<T>,
    pub e: Vec<T>,
}

impl<T: Real> Bidiagonal<T> {
    pub fn new(d: Vec<T>, e: Vec<T>) -> Self {
        debug_assert!(d.is_empty() || e.len() + 1 == d.len());
        Bidiagonal { d, e }
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    /// Number of singular values strictly below `x > 0`.
    ///
    /// Sturm count on the Golub–Kahan form `[[0, B^T], [B, 0]]`, whose
    /// eigenvalues are `±σ_i`.
    pub fn count_below(&self, x: T) -> usize {
        let n = self.d.len();
        if n == 0 {
            return 0;
        }
        let pivmin = T::min_positive_value() / T::epsilon();
        let mut q = -x;
        let mut count = usize::from(q < T::zero());
        for k in 0..(2 * n - 1) {
            let f = if k % 2 == 0 {
                self.d[k / 2]
            } else {
                self.e[k / 2]
            };
            q = -x - f * f / q;
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < T::zero() {
                count += 1;
            }
        }
        count.saturating_sub(n)
    }

    /// Gershgorin bound on the largest singular value.
    pub fn upper_bound(&self) -> T {
        let dmax = self.d.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
        let emax = self.e.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
        (dmax + emax) * (T::one() + T::lit(4.0) * T::epsilon()) + T::min_positive_value()
    }

    /// The `k`-th smallest singular value (`k = 0` is the smallest), by bisection.
    ///
    /// Bisection stops as soon as the value is known to lie below `floor`;
    /// the returned upper bracket is then at most `floor`.
    pub fn kth_smallest(&self, k: usize, floor: T) -> T {
        assert!(k < self.len());
        let eps = T::epsilon();
        let mut lo = T::zero();
        let mut hi = self.upper_bound();
        for _ in 0..4000 {
            if hi <= floor {
                return hi;
            }
            let mid = (lo + hi) / T::lit(2.0);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= T::lit(2.0) * eps * hi {
                break;
            }
        }
        (lo + hi) / T::lit(2.0)
    }

    pub fn sigma_min(&self) -> T {
        self.kth_smallest(0, T::zero())
    }

    pub fn sigma_max(&self) -> T {
        if self.is_empty() {
            return T::zero();
        }
        self.kth_smallest(self.len() - 1, T::zero())
    }

    /// All singular values in descending order.
    pub fn singular_values(&self) -> Vec<T> {
        (0..self.len())
            .rev()
            .map(|k| self.kth_smallest(k, T::zero()))
            .collect()
    }
}

/// Householder reduction of a dense matrix to real bidiagonal form.
///
/// Wide matrices are handled through their adjoint.
pub fn bidiagonalize<T: Real>(a: &CMatrix<T>) -> Result<Bidiagonal<T>> {
    if !a.is_finite() {
        return Err(Error::SvdFailure("matrix has non-finite entries".into()));
    }
    let mut m = if a.rows() >= a.cols() {
        a.clone()
    } else {
        a.adjoint()
    };
    let rows = m.rows();
    let cols = m.cols();
    let mut d = Vec::with_capacity(cols);
    let mut e = Vec::with_capacity(cols.saturating_sub(1));
    let mut x = Vec::with_capacity(rows);
    let mut w = vec![Complex::zero(); cols];
    for k in 0..cols {
        x.clear();
        x.extend((k..rows).map(|r| m[(r, k)]));
        let h = Reflector::new(&x);
        if !h.is_identity() {
            // w_j = Σ_i conj(v_i) m[k+i][j] over the trailing columns
            for wj in w[k + 1..].iter_mut() {
                *wj = Complex::zero();
            }
            for (i, &vi) in h.v.iter().enumerate() {
                let row = m.row(k + i);
                let vc = vi.conj();
                for j in k + 1..cols {
                    w[j] += vc * row[j];
                }
            }
            for (i, &vi) in h.v.iter().enumerate() {
                let row = m.row_mut(k + i);
                for j in k + 1..cols {
                    row[j] -= (w[j].scale(h.tau)) * vi;
                }
            }
        }
        d.push(cabs(h.beta));
        for r in k + 1..rows {
            m[(r, k)] = Complex::zero();
        }
        if k + 1 < cols {
            let xr: Vec<Complex<T>> = (k + 1..cols).map(|c| m[(k, c)].conj()).collect();
            let g = Reflector::new(&xr);
            if !g.is_identity() {
                for r in k + 1..rows {
                    let row = m.row_mut(r);
                    let s =
                        g.v.iter()
                            .enumerate()
                            .fold(Complex::zero(), |acc, (i, &vi)| acc + row[k + 1 + i] * vi);
                    let s = s.scale(g.tau);
                    for (i, &vi) in g.v.iter().enumerate() {
                        row[k + 1 + i] -= s * vi.conj();
                    }
                }
            }
            e.push(cabs(g.beta));
        }
    }
    Ok(Bidiagonal::new(d, e))
}

/// All singular values of a dense matrix, descending.
pub fn singular_values<T: Real>(a: &CMatrix<T>) -> Result<Vec<T>> {
    Ok(bidiagonalize(a)?.singular_values())
}

/// Spectral norm.
pub fn norm2<T: Real>(a: &CMatrix<T>) -> Result<T> {
    Ok(bidiagonalize(a)?.sigma_max())
}

/// Smallest singular value of a square or tall matrix.
pub fn sigma_min<T: Real>(a: &CMatrix<T>) -> Result<T> {
    Ok(bidiagonalize(a)?.sigma_min())
}

/// Spectral norm of `sum_j a_j b_j^*` without forming the product.
///
/// With `B = Q R` (Gram-Schmidt, reorthogonalized once) the norm equals
/// that of the thin matrix `A R^*`.
pub fn low_rank_norm2<T: Real>(a: &[Vec<Complex<T>>], b: &[Vec<Complex<T>>]) -> Result<T> {
    let k = a.len();
    if k != b.len() || k == 0 {
        return Err(Error::Dimension(format!(
            "low-rank factors {} and {}",
            a.len(),
            b.len()
        )));
    }
    let dim = b[0].len();
    if a.iter().chain(b).any(|v| v.len() != dim) {
        return Err(Error::Dimension("low-rank factor lengths differ".into()));
    }
    let mut q: Vec<Vec<Complex<T>>> = Vec::with_capacity(k);
    let mut r = CMatrix::<T>::zeros(k, k);
    for (j, col) in b.iter().enumerate() {
        let mut v = col.clone();
        for _ in 0..2 {
            for (i, qi) in q.iter().enumerate() {
                let c = super::matrix::dot(qi, &v);
                r[(i, j)] += c;
                for (x, y) in v.iter_mut().zip(qi) {
                    *x -= c * y;
                }
            }
        }
        let nv = super::matrix::vec_norm(&v);
        r[(j, j)] = Complex::new(nv, T::zero());
        if nv > T::zero() {
            for x in v.iter_mut() {
                *x = x.unscale(nv);
            }
        }
        q.push(v);
    }
    // (A R^*)[:, i] = sum_j a_j conj(r_ij)
    let thin = CMatrix::from_fn(dim, k, |row, i| {
        (0..k).fold(Complex::zero(), |s, j| s + a[j][row] * r[(i, j)].conj())
    });
    norm2(&thin)
}
