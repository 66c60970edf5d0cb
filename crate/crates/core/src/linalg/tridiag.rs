//! Symmetric tridiagonal eigenproblem by implicit QL.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Eigenvalues (ascending) of the symmetric tridiagonal matrix with diagonal
/// `diag` and off-diagonal `off`, optionally with the first component of
/// each normalized eigenvector.
pub fn symmetric_tridiagonal_eigen<T: Real>(
    diag: &[T],
    off: &[T],
    want_first_components: bool,
) -> Result<(Vec<T>, Option<Vec<T>>)> {
    let n = diag.len();
    if n == 0 {
        return Ok((Vec::new(), want_first_components.then(Vec::new)));
    }
    if off.len() + 1 != n {
        return Err(Error::Dimension(format!(
            "{} off-diagonals for order {}",
            off.len(),
            n
        )));
    }
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(T::zero());
    // z[k] holds the first component of eigenvector k
    let mut z: Vec<T> = (0..n)
        .map(|k| if k == 0 { T::one() } else { T::zero() })
        .collect();
    let two = T::lit(2.0);
    let eps = T::epsilon();

    for l in 0..n {
        let mut iter = 0usize;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::EigenNoConvergence { iterations: iter });
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            let sgn = if g >= T::zero() { r } else { -r };
            g = d[m] - d[l] + e[l] / (g + sgn);
            let mut s = T::one();
            let mut c = T::one();
            let mut p = T::zero();
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&k| d[k]).collect();
    let first = want_first_components.then(|| order.iter().map(|&k| z[k]).collect());
    Ok((values, first))
}
