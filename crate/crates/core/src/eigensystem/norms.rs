//! Norms of the spectral projectors and their exponential growth rate.

use std::fmt::Write as _;

use super::block::raw_block_vectors;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::{check_angle, rotated_norm_sq_log_series};

/// `ln(a e^x + b e^y)` for `a, b >= 0`.
fn log_mix<T: Real>(a: T, x: T, b: T, y: T) -> T {
    let top = x.max(y);
    top + (a * (x - top).exp() + b * (y - top).exp()).ln()
}

/// Weights `(|u_1|^2 + |u_3|^2, |u_2|^2 + |u_4|^2) / |u|^2` of eigenvector `j`.
fn weights<T: Real>(n: usize, mass: T, j: usize) -> (T, T) {
    let u = raw_block_vectors(n, mass)[j];
    let total = u.iter().fold(T::zero(), |s, &x| s + x * x);
    (
        (u[0] * u[0] + u[2] * u[2]) / total,
        (u[1] * u[1] + u[3] * u[3]) / total,
    )
}

/// `ln ||P_n||` from precomputed `ln ||phi_k||^2`, for the positive (`j = 1, 2`)
/// or negative (`j = 3, 4`) level.
///
/// The ranges `chi^1, chi^2` are mutually orthogonal, and so are the
/// co-ranges, hence `||P_n|| = max_j ||chi^j|| ||chi~^j||`, and
/// `||phi~_k|| = ||phi_k||`.
pub fn projector_norm_log_from<T: Real>(n: usize, mass: T, log_norms: &[T], positive: bool) -> T {
    if n == 0 {
        return log_norms[0];
    }
    let js = if positive { [0, 1] } else { [2, 3] };
    js.iter()
        .map(|&j| {
            let (wa, wb) = weights(n, mass, j);
            log_mix(wa, log_norms[n], wb, log_norms[n - 1])
        })
        .fold(T::neg_infinity(), |a, b| a.max(b))
}

/// `ln ||P_n^+||`.
pub fn projector_norm_log<T: Real>(n: usize, theta: T, mass: T) -> Result<T> {
    let norms = rotated_norm_sq_log_series(n, theta)?;
    Ok(projector_norm_log_from(n, mass, &norms, true))
}

/// `| ln ||P_n^+|| - ln ||P_n^-|| |`.
pub fn projector_norm_symmetry_check<T: Real>(n: usize, theta: T, mass: T) -> Result<T> {
    let norms = rotated_norm_sq_log_series(n, theta)?;
    Ok((projector_norm_log_from(n, mass, &norms, true)
        - projector_norm_log_from(n, mass, &norms, false))
    .abs())
}

/// `ln sqrt((1 + |sin theta|)/(1 - |sin theta|))`.
pub fn projector_rate<T: Real>(theta: T) -> Result<T> {
    check_angle(theta)?;
    let s = theta.sin().abs();
    Ok(((T::one() + s) / (T::one() - s)).ln() / T::lit(2.0))
}

/// Upper and lower bounds sandwiching `ln ||P_n^+||` for `n >= 1`:
/// `ln(sqrt 8 (||phi_n||^2 + ||phi_{n-1}||^2))` and the value for `j = 1`.
pub fn projector_norm_bounds<T: Real>(n: usize, mass: T, log_norms: &[T]) -> (T, T) {
    let one = T::one();
    let upper = T::lit(8.0).precise_sqrt().ln() + log_mix(one, log_norms[n], one, log_norms[n - 1]);
    let (wa, wb) = weights(n, mass, 0);
    (log_mix(wa, log_norms[n], wb, log_norms[n - 1]), upper)
}

/// `ln ||P_n^+||` for `n = 0..=n_max` and the increment rate estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectorNormSeries<T> {
    pub theta: T,
    pub mass: T,
    pub entries: Vec<(usize, T)>,
    pub rate_estimate: T,
}

impl<T: Real> ProjectorNormSeries<T> {
    /// `ln ||P_n|| - ln ||P_{n-1}||`; undefined (NaN) at `n = 0`.
    pub fn increment(&self, idx: usize) -> T {
        if idx == 0 {
            T::nan()
        } else {
            self.entries[idx].1 - self.entries[idx - 1].1
        }
    }

    /// CSV with header `n,log_norm,increment`, 17 significant digits, the
    /// first increment written as `nan`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,log_norm,increment\n");
        for (i, &(n, v)) in self.entries.iter().enumerate() {
            let inc = self.increment(i);
            let inc = if inc.is_nan() {
                "nan".to_string()
            } else {
                format!("{:.16e}", inc.to_f64_lossy())
            };
            writeln!(s, "{n},{:.16e},{inc}", v.to_f64_lossy()).unwrap();
        }
        s
    }
}

/// Series of projector norms up to `n_max >= 20` and the increment
/// estimator `ln ||P_{n_max}|| - ln ||P_{n_max - 1}||` of the rate.
pub fn estimate_rate<T: Real>(
    theta: T,
    mass: T,
    n_max: usize,
) -> Result<(T, ProjectorNormSeries<T>)> {
    if n_max < 20 {
        return Err(Error::InvalidParameter(format!(
            "rate estimate needs n_max >= 20, got {n_max}"
        )));
    }
    let norms = rotated_norm_sq_log_series(n_max, theta)?;
    let entries: Vec<(usize, T)> = (0..=n_max)
        .map(|n| (n, projector_norm_log_from(n, mass, &norms, true)))
        .collect();
    let rate = entries[n_max].1 - entries[n_max - 1].1;
    Ok((
        rate,
        ProjectorNormSeries {
            theta,
            mass,
            entries,
            rate_estimate: rate,
        },
    ))
}
