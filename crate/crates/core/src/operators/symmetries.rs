//! Exact matrix identities of the rotated Dirac truncation. Each function
//! returns the largest entrywise deviation.

use num_complex::Complex;

use super::truncated::TruncatedOperator;
use crate::error::Result;
use crate::linalg::CMatrix;
use crate::scalar::Real;

/// `max |H(theta)^* - H(-theta)|`.
pub fn adjoint_deviation<T: Real>(
    h: &TruncatedOperator<T>,
    h_neg: &TruncatedOperator<T>,
) -> Result<T> {
    h.matrix().adjoint().max_abs_diff(h_neg.matrix())
}

/// Applies `diag(d_row) M diag(d_col)` with a phase per index.
fn conjugate_by<T: Real>(
    m: &CMatrix<T>,
    phase: impl Fn(usize) -> Complex<T>,
    conj_entries: bool,
) -> CMatrix<T> {
    CMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        let z = if conj_entries {
            m[(r, c)].conj()
        } else {
            m[(r, c)]
        };
        phase(r) * z * phase(c).conj()
    })
}

fn sign<T: Real>(negative: bool) -> Complex<T> {
    Complex::new(if negative { -T::one() } else { T::one() }, T::zero())
}

/// `max |(alpha_0 ⊗ I) H (alpha_0 ⊗ I) + H|`.
pub fn alpha0_anticommutation_deviation<T: Real>(h: &TruncatedOperator<T>) -> Result<T> {
    let n = h.basis_size();
    let conj = conjugate_by(h.matrix(), |i| sign(i / n >= 2), false);
    let neg = h.matrix().scale(Complex::new(-T::one(), T::zero()));
    conj.max_abs_diff(&neg)
}

/// `max |Pi conj(H) Pi - H^*|` with `Pi = I ⊗ diag((-1)^n)`.
pub fn parity_conjugation_deviation<T: Real>(h: &TruncatedOperator<T>) -> Result<T> {
    let n = h.basis_size();
    let m = conjugate_by(h.matrix(), |i| sign((i % n) % 2 == 1), true);
    m.max_abs_diff(&h.matrix().adjoint())
}

/// Phase `(1, i, 1, i)_component * (-i)^mode` of the diagonal unitary `V`.
pub fn conjugation_phase<T: Real>(n: usize, i: usize) -> Complex<T> {
    let (comp, mode) = (i / n, i % n);
    let k = (usize::from(comp % 2 == 1) + 3 * mode) % 4;
    let (o, l) = (T::zero(), T::one());
    match k {
        0 => Complex::new(l, o),
        1 => Complex::new(o, l),
        2 => Complex::new(-l, o),
        _ => Complex::new(o, -l),
    }
}

/// `max |V conj(H) V^* - H|` for the diagonal unitary of
/// [`conjugation_phase`]. The identity makes `H - z` and `H - conj(z)`
/// unitarily equivalent up to entrywise conjugation, so singular values
/// agree at conjugate shifts.
pub fn conjugation_similarity_deviation<T: Real>(h: &TruncatedOperator<T>) -> Result<T> {
    let n = h.basis_size();
    let m = conjugate_by(h.matrix(), |i| conjugation_phase(n, i), true);
    m.max_abs_diff(h.matrix())
}
