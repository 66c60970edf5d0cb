//! Eigenvalues of general complex matrices: Hessenberg reduction followed by
//! the shifted QR iteration.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::CMatrix;
use super::rot::{Givens, Reflector};
use crate::error::{Error, Result};
use crate::scalar::{cabs, csqrt, Real};

/// Reduces `a` in place to upper Hessenberg form by a unitary similarity.
pub fn hessenberg<T: Real>(a: &mut CMatrix<T>) {
    let n = a.rows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let x: Vec<Complex<T>> = (k + 1..n).map(|r| a[(r, k)]).collect();
        let h = Reflector::new(&x);
        if h.is_identity() {
            continue;
        }
        // left: rows k+1.., all columns from k
        let mut col = vec![Complex::zero(); n - k - 1];
        for c in k..n {
            for (i, slot) in col.iter_mut().enumerate() {
                *slot = a[(k + 1 + i, c)];
            }
            h.apply(&mut col);
            for (i, &v) in col.iter().enumerate() {
                a[(k + 1 + i, c)] = v;
            }
        }
        // right: columns k+1.., all rows
        for r in 0..n {
            let row = &mut a.row_mut(r)[k + 1..];
            let s = row
                .iter()
                .zip(&h.v)
                .fold(Complex::zero(), |acc, (&y, &v)| acc + y * v);
            let s = s.scale(h.tau);
            for (y, &v) in row.iter_mut().zip(&h.v) {
                *y -= s * v.conj();
            }
        }
        for r in k + 2..n {
            a[(r, k)] = Complex::zero();
        }
    }
}

fn l1<T: Real>(z: Complex<T>) -> T {
    z.re.abs() + z.im.abs()
}

/// All eigenvalues of a square complex matrix, in no particular order.
pub fn eigenvalues<T: Real>(a: &CMatrix<T>) -> Result<Vec<Complex<T>>> {
    if !a.is_square() {
        return Err(Error::Dimension("eigenvalues need a square matrix".into()));
    }
    if !a.is_finite() {
        return Err(Error::EigenNoConvergence { iterations: 0 });
    }
    let n = a.rows();
    let mut h = a.clone();
    hessenberg(&mut h);
    let mut out = vec![Complex::zero(); n];
    if n == 0 {
        return Ok(out);
    }
    let eps = T::epsilon();
    let scale = h.as_slice().iter().fold(T::zero(), |m, &z| m.max(l1(z)));
    let max_iter = 30 * n.max(10);
    let mut total = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n - 1;
    loop {
        if hi == 0 {
            out[0] = h[(0, 0)];
            break;
        }
        let mut l = hi;
        while l > 0 {
            let s = l1(h[(l - 1, l - 1)]) + l1(h[(l, l)]);
            let s = if s == T::zero() { scale } else { s };
            if l1(h[(l, l - 1)]) <= eps * s {
                h[(l, l - 1)] = Complex::zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            out[hi] = h[(hi, hi)];
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        total += 1;
        since_deflation += 1;
        if total > max_iter {
            return Err(Error::EigenNoConvergence { iterations: total });
        }
        let mu = if since_deflation % 11 == 10 {
            h[(hi, hi)] + Complex::new(T::lit(0.75) * cabs(h[(hi, hi - 1)]), T::zero())
        } else {
            let a11 = h[(hi - 1, hi - 1)];
            let a12 = h[(hi - 1, hi)];
            let a21 = h[(hi, hi - 1)];
            let a22 = h[(hi, hi)];
            let half = (a11 - a22).scale(T::lit(0.5));
            let disc = csqrt(half * half + a12 * a21);
            let mean = (a11 + a22).scale(T::lit(0.5));
            let m1 = mean + disc;
            let m2 = mean - disc;
            if (m1 - a22).norm_sqr() <= (m2 - a22).norm_sqr() {
                m1
            } else {
                m2
            }
        };
        qr_step(&mut h, l, hi, mu);
    }
    Ok(out)
}

fn qr_step<T: Real>(h: &mut CMatrix<T>, l: usize, hi: usize, mu: Complex<T>) {
    for k in l..=hi {
        h[(k, k)] -= mu;
    }
    let mut rots = Vec::with_capacity(hi - l);
    for k in l..hi {
        let (g, r) = Givens::new(h[(k, k)], h[(k + 1, k)]);
        h[(k, k)] = r;
        h[(k + 1, k)] = Complex::zero();
        for c in k + 1..=hi {
            let (x, y) = g.rotate(h[(k, c)], h[(k + 1, c)]);
            h[(k, c)] = x;
            h[(k + 1, c)] = y;
        }
        rots.push(g);
    }
    for (idx, g) in rots.iter().enumerate() {
        let k = l + idx;
        let rmax = (k + 2).min(hi);
        for r in l..=rmax {
            let (x, y) = g.rotate_adjoint(h[(r, k)], h[(r, k + 1)]);
            h[(r, k)] = x;
            h[(r, k + 1)] = y;
        }
    }
    for k in l..=hi {
        h[(k, k)] += mu;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_re(mut v: Vec<Complex<f64>>) -> Vec<Complex<f64>> {
        v.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        });
        v
    }

    #[test]
    fn triangular_matrix() {
        let a = CMatrix::from_fn(4, 4, |r, c| {
            if r <= c {
                Complex::new((r + c) as f64, 1.0)
            } else {
                Complex::zero()
            }
        });
        let ev = sorted_re(eigenvalues(&a).unwrap());
        for (k, z) in ev.iter().enumerate() {
            assert!((z - Complex::new(2.0 * k as f64, 1.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn rotation_generator() {
        // [[0, -1], [1, 0]] has eigenvalues ±i
        let a = CMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 1) => Complex::new(-1.0, 0.0),
            (1, 0) => Complex::new(1.0, 0.0),
            _ => Complex::zero(),
        });
        let ev = eigenvalues(&a).unwrap();
        let mut ims: Vec<f64> = ev.iter().map(|z| z.im).collect();
        ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ims[0] + 1.0).abs() < 1e-14 && (ims[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn companion_matrix_roots() {
        // roots 1, 2, 3, 4, 5
        let coeffs = [-120.0, 274.0, -225.0, 85.0, -15.0];
        let n = 5;
        let a = CMatrix::from_fn(n, n, |r, c| {
            if r + 1 == c {
                Complex::new(1.0, 0.0)
            } else if r == n - 1 {
                Complex::new(-coeffs[c], 0.0)
            } else {
                Complex::zero()
            }
        });
        let ev = sorted_re(eigenvalues(&a).unwrap());
        for (k, z) in ev.iter().enumerate() {
            assert!((z - Complex::new(k as f64 + 1.0, 0.0)).norm() < 1e-9);
        }
    }
}
