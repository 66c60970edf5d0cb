//! The four constant Dirac matrices in the standard representation.

use std::ops::Neg;

use num_complex::Complex;
use num_traits::Num;

use crate::linalg::CMatrix;
use crate::scalar::Real;

/// A 4x4 matrix over any complex ring.
pub type Mat4<S> = [[Complex<S>; 4]; 4];

/// `alpha_1, alpha_2, alpha_3` (built from the Pauli matrices in the
/// off-diagonal blocks) and `alpha_0 = diag(1, 1, -1, -1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiracMatrices<S> {
    pub alpha1: Mat4<S>,
    pub alpha2: Mat4<S>,
    pub alpha3: Mat4<S>,
    pub alpha0: Mat4<S>,
}

fn zero4<S: Num + Clone>() -> Mat4<S> {
    std::array::from_fn(|_| std::array::from_fn(|_| Complex::new(S::zero(), S::zero())))
}

/// 4x4 product.
pub fn mul4<S: Num + Clone>(a: &Mat4<S>, b: &Mat4<S>) -> Mat4<S> {
    let mut out = zero4();
    for (r, row) in out.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            for k in 0..4 {
                *slot = slot.clone() + a[r][k].clone() * b[k][c].clone();
            }
        }
    }
    out
}

/// `{a, b} = ab + ba`.
pub fn anticommutator<S: Num + Clone>(a: &Mat4<S>, b: &Mat4<S>) -> Mat4<S> {
    let x = mul4(a, b);
    let y = mul4(b, a);
    let mut out = x;
    for r in 0..4 {
        for c in 0..4 {
            out[r][c] = out[r][c].clone() + y[r][c].clone();
        }
    }
    out
}

impl<S: Num + Clone + Neg<Output = S>> DiracMatrices<S> {
    pub fn standard() -> Self {
        let o = || S::zero();
        let l = || S::one();
        let re = |x: S| Complex::new(x, S::zero());
        let im = |x: S| Complex::new(S::zero(), x);
        // pauli blocks
        let s1 = [[re(o()), re(l())], [re(l()), re(o())]];
        let s2 = [[re(o()), im(-l())], [im(l()), re(o())]];
        let s3 = [[re(l()), re(o())], [re(o()), re(-l())]];
        let offdiag = |p: &[[Complex<S>; 2]; 2]| {
            let mut m = zero4();
            for r in 0..2 {
                for c in 0..2 {
                    m[r][c + 2] = p[r][c].clone();
                    m[r + 2][c] = p[r][c].clone();
                }
            }
            m
        };
        let mut alpha0 = zero4();
        for (k, sign) in [l(), l(), -l(), -l()].into_iter().enumerate() {
            alpha0[k][k] = re(sign);
        }
        DiracMatrices {
            alpha1: offdiag(&s1),
            alpha2: offdiag(&s2),
            alpha3: offdiag(&s3),
            alpha0,
        }
    }

    /// `[alpha_1, alpha_2, alpha_3, alpha_0]`.
    pub fn all(&self) -> [&Mat4<S>; 4] {
        [&self.alpha1, &self.alpha2, &self.alpha3, &self.alpha0]
    }

    /// `i alpha_1 alpha_2`.
    pub fn i_alpha1_alpha2(&self) -> Mat4<S> {
        let p = mul4(&self.alpha1, &self.alpha2);
        p.map(|row| row.map(|z| Complex::new(-z.im, z.re)))
    }
}

/// Converts a small exact matrix to a [`CMatrix`].
pub fn to_cmatrix<T: Real>(m: &Mat4<i64>) -> CMatrix<T> {
    CMatrix::from_fn(4, 4, |r, c| {
        Complex::new(
            T::from_i64(m[r][c].re).unwrap(),
            T::from_i64(m[r][c].im).unwrap(),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_relations_exact() {
        let d = DiracMatrices::<i64>::standard();
        let all = d.all();
        for (mu, a) in all.iter().enumerate() {
            for (nu, b) in all.iter().enumerate() {
                let ac = anticommutator(a, b);
                for r in 0..4 {
                    for c in 0..4 {
                        let expect = if mu == nu && r == c { 2 } else { 0 };
                        assert_eq!(ac[r][c], Complex::new(expect, 0), "mu={mu} nu={nu}");
                    }
                }
            }
        }
    }

    #[test]
    fn hermitian_and_unitary() {
        let d = DiracMatrices::<i64>::standard();
        for a in d.all() {
            for r in 0..4 {
                for c in 0..4 {
                    assert_eq!(a[r][c], a[c][r].conj());
                }
            }
            let sq = mul4(a, a);
            for r in 0..4 {
                for c in 0..4 {
                    assert_eq!(sq[r][c], Complex::new(i64::from(r == c), 0));
                }
            }
        }
    }

    #[test]
    fn product_is_diagonal_sign_matrix() {
        let d = DiracMatrices::<i64>::standard();
        let p = d.i_alpha1_alpha2();
        let signs = [-1, 1, -1, 1];
        for r in 0..4 {
            for c in 0..4 {
                let expect = if r == c { signs[r] } else { 0 };
                assert_eq!(p[r][c], Complex::new(expect, 0));
            }
        }
    }
}
