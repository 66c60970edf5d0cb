//! Banded storage and band-preserving reduction to bidiagonal form.

use num_complex::Complex;
use num_traits::Zero;

use super::rot::{Givens, Reflector};
use super::svd::Bidiagonal;
use crate::scalar::{cabs, Real};

/// Square band matrix holding entries with `-kl <= c - r <= ku`.
#[derive(Clone, Debug, PartialEq)]
pub struct BandMatrix<T> {
    n: usize,
    kl: usize,
    ku: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> BandMatrix<T> {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        BandMatrix {
            n,
            kl,
            ku,
            data: vec![Complex::zero(); n * (kl + ku + 1)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lower(&self) -> usize {
        self.kl
    }

    pub fn upper(&self) -> usize {
        self.ku
    }

    #[inline]
    fn in_band(&self, r: usize, c: usize) -> bool {
        r < self.n && c < self.n && c + self.kl >= r && c <= r + self.ku
    }

    #[inline]
    fn slot(&self, r: usize, c: usize) -> usize {
        debug_assert!(self.in_band(r, c), "({r}, {c}) outside band");
        r * (self.kl + self.ku + 1) + (c + self.kl - r)
    }

    /// Entry, zero outside the stored band.
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        if self.in_band(r, c) {
            self.data[self.slot(r, c)]
        } else {
            Complex::zero()
        }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex<T>) {
        let s = self.slot(r, c);
        self.data[s] = v;
    }

    /// Adds `k` to the diagonal.
    pub fn shift_diagonal(&mut self, k: Complex<T>) {
        for i in 0..self.n {
            let s = self.slot(i, i);
            self.data[s] += k;
        }
    }

    /// Copy with room for `kl` subdiagonals and `ku` superdiagonals.
    pub fn widened(&self, kl: usize, ku: usize) -> Self {
        let kl = kl.max(self.kl);
        let ku = ku.max(self.ku);
        let mut out = Self::zeros(self.n, kl, ku);
        for r in 0..self.n {
            let c0 = r.saturating_sub(self.kl);
            let c1 = (r + self.ku).min(self.n - 1);
            for c in c0..=c1 {
                out.set(r, c, self.get(r, c));
            }
        }
        out
    }
}

/// Reduces a band matrix with `p` subdiagonals and `q` superdiagonals to real
/// upper bidiagonal form by unitary transformations.
///
/// A Householder QR sweep first makes the matrix upper triangular with
/// bandwidth `p + q`; Givens rotations with bulge chasing then remove one
/// superdiagonal entry at a time. Work is `O(n^2 (p + q))`.
pub fn band_bidiagonalize<T: Real>(a: &BandMatrix<T>, p: usize, q: usize) -> Bidiagonal<T> {
    let n = a.n();
    if n == 0 {
        return Bidiagonal::new(Vec::new(), Vec::new());
    }
    let b = p + q;
    let mut m = a.widened(p.max(1), b + 1);
    triangularize(&mut m, p, b);

    if b >= 2 {
        for i in 0..n.saturating_sub(2) {
            let jmax = (i + b).min(n - 1);
            for j in (i + 2..=jmax).rev() {
                if m.get(i, j).is_zero() {
                    continue;
                }
                column_rotation(&mut m, i, j);
                let mut jj = j;
                loop {
                    row_rotation(&mut m, jj, b);
                    let k = jj + b;
                    if k >= n {
                        break;
                    }
                    if m.get(jj - 1, k).is_zero() {
                        break;
                    }
                    column_rotation(&mut m, jj - 1, k);
                    jj = k;
                }
            }
        }
    }

    let d = (0..n).map(|k| cabs(m.get(k, k))).collect();
    let e = (0..n - 1).map(|k| cabs(m.get(k, k + 1))).collect();
    Bidiagonal::new(d, e)
}

// Householder QR in place: afterwards `m` is upper triangular with
// bandwidth `b`. Entries below the diagonal are left zero.
fn triangularize<T: Real>(m: &mut BandMatrix<T>, p: usize, b: usize) {
    let n = m.n();
    let mut x = Vec::with_capacity(p + 1);
    for k in 0..n {
        let last = (k + p).min(n - 1);
        if last == k {
            continue;
        }
        x.clear();
        x.extend((k..=last).map(|r| m.get(r, k)));
        let h = Reflector::new(&x);
        if h.is_identity() {
            continue;
        }
        m.set(k, k, h.beta);
        for r in k + 1..=last {
            m.set(r, k, Complex::zero());
        }
        let cmax = (k + b).min(n - 1);
        for c in k + 1..=cmax {
            let mut w = Complex::zero();
            for (i, &vi) in h.v.iter().enumerate() {
                w += vi.conj() * m.get(k + i, c);
            }
            let w = w.scale(h.tau);
            if w.is_zero() {
                continue;
            }
            for (i, &vi) in h.v.iter().enumerate() {
                let s = m.slot(k + i, c);
                m.data[s] -= w * vi;
            }
        }
    }
}

/// Upper triangular factor `R` of `A = Q R` for a band matrix `A`, with
/// bandwidth `p + q`.
#[derive(Clone, Debug)]
pub struct BandTriangular<T> {
    r: BandMatrix<T>,
    width: usize,
}

impl<T: Real> BandTriangular<T> {
    pub fn new(a: &BandMatrix<T>, p: usize, q: usize) -> Self {
        let width = p + q;
        let mut r = a.widened(p, width);
        triangularize(&mut r, p, width);
        BandTriangular { r, width }
    }

    pub fn n(&self) -> usize {
        self.r.n()
    }

    /// Whether some diagonal entry of `R` vanishes.
    pub fn is_singular(&self) -> bool {
        (0..self.n()).any(|i| self.r.get(i, i).is_zero())
    }

    /// Solves `R x = y` in place.
    pub fn solve(&self, y: &mut [Complex<T>]) {
        let n = self.n();
        for i in (0..n).rev() {
            let mut s = y[i];
            for c in i + 1..=(i + self.width).min(n - 1) {
                s -= self.r.get(i, c) * y[c];
            }
            y[i] = s / self.r.get(i, i);
        }
    }

    /// Solves `R^* x = y` in place.
    pub fn solve_adjoint(&self, y: &mut [Complex<T>]) {
        let n = self.n();
        for i in 0..n {
            let mut s = y[i];
            for r in i.saturating_sub(self.width)..i {
                s -= self.r.get(r, i).conj() * y[r];
            }
            y[i] = s / self.r.get(i, i).conj();
        }
    }

    /// Smallest singular value of `R`, equal to that of `A`.
    ///
    /// Lanczos with full reorthogonalization on `R^{-1} R^{-*}`, whose
    /// largest eigenvalue is `1/sigma_min^2`. Stops once the Ritz residual
    /// falls below `1e-13` relative, or after `n` steps when the Krylov
    /// space is exhausted and the value is exact.
    pub fn sigma_min(&self) -> T {
        let n = self.n();
        if n == 0 {
            return T::infinity();
        }
        if self.is_singular() {
            return T::zero();
        }
        let tol = T::lit(1e-13);
        // fixed start vector, no component can vanish by symmetry
        let mut v: Vec<Complex<T>> = (0..n)
            .map(|i| {
                let h = ((i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 11) as f64
                    / (1u64 << 53) as f64;
                Complex::new(T::lit(0.5 + h), T::lit(h - 0.25))
            })
            .collect();
        let nv = norm(&v);
        v.iter_mut().for_each(|x| *x = x.unscale(nv));
        let mut basis: Vec<Vec<Complex<T>>> = Vec::new();
        let mut alpha: Vec<T> = Vec::new();
        let mut beta: Vec<T> = Vec::new();
        let mut top = T::zero();
        for step in 0..n {
            let mut w = v.clone();
            self.solve_adjoint(&mut w);
            self.solve(&mut w);
            if w.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
                return T::zero();
            }
            let a = dotc(&v, &w).re;
            basis.push(v);
            for _ in 0..2 {
                for u in &basis {
                    let c = dotc(u, &w);
                    w.iter_mut().zip(u).for_each(|(x, y)| *x -= c * y);
                }
            }
            alpha.push(a);
            let b = norm(&w);
            // largest Ritz value and the last component of its vector, read
            // from the reversed tridiagonal
            let rd: Vec<T> = alpha.iter().rev().copied().collect();
            let ro: Vec<T> = beta.iter().rev().copied().collect();
            let Ok((vals, Some(first))) =
                super::tridiag::symmetric_tridiagonal_eigen(&rd, &ro, true)
            else {
                break;
            };
            top = vals[vals.len() - 1];
            let last = first[first.len() - 1].abs();
            if step + 1 == n || b * last <= tol * top || b <= tol * top {
                break;
            }
            beta.push(b);
            v = w.iter().map(|x| x.unscale(b)).collect();
        }
        T::one() / top.sqrt()
    }
}

fn dotc<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::zero(), |s, (x, y)| s + x.conj() * y)
}

fn norm<T: Real>(a: &[Complex<T>]) -> T {
    a.iter().fold(T::zero(), |s, x| s + x.norm_sqr()).sqrt()
}

/// Zeroes `m[r0][j]` against `m[r0][j-1]` by rotating columns `j-1, j`
/// over rows `r0..=j`; leaves a bulge at `(j, j-1)`.
fn column_rotation<T: Real>(m: &mut BandMatrix<T>, r0: usize, j: usize) {
    let p = m.get(r0, j - 1);
    let q = m.get(r0, j);
    let (g, _) = Givens::new(p.conj(), q.conj());
    for r in r0..=j {
        let x = m.get(r, j - 1);
        let y = m.get(r, j);
        let (x2, y2) = g.rotate_adjoint(x, y);
        m.set(r, j - 1, x2);
        if r == r0 {
            m.set(r, j, Complex::zero());
        } else {
            m.set(r, j, y2);
        }
    }
}

/// Zeroes the subdiagonal bulge `m[jj][jj-1]` by rotating rows `jj-1, jj`.
fn row_rotation<T: Real>(m: &mut BandMatrix<T>, jj: usize, b: usize) {
    let n = m.n();
    let a = m.get(jj - 1, jj - 1);
    let bulge = m.get(jj, jj - 1);
    if bulge.is_zero() {
        return;
    }
    let (g, r) = Givens::new(a, bulge);
    m.set(jj - 1, jj - 1, r);
    m.set(jj, jj - 1, Complex::zero());
    let cmax = (jj + b).min(n - 1);
    for c in jj..=cmax {
        let x = m.get(jj - 1, c);
        let y = m.get(jj, c);
        let (x2, y2) = g.rotate(x, y);
        m.set(jj - 1, c, x2);
        m.set(jj, c, y2);
    }
}
