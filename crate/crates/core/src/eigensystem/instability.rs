//! Eigenvalues of the Galerkin truncation against the exact spectrum.

use num_complex::Complex;

use crate::error::Result;
use crate::linalg::{eigenvalues, CMatrix};
use crate::operators::{build_dirac, level, OscillatorParams, TruncatedOperator};
use crate::scalar::Real;

/// Eigenvalues of a truncation, computed block by block over its decoupled
/// sectors.
pub fn truncation_eigenvalues<T: Real>(op: &TruncatedOperator<T>) -> Result<Vec<Complex<T>>> {
    let bb = op.block_band();
    let mut out = Vec::with_capacity(op.dim());
    for block in bb.blocks() {
        let idx = &block.indices;
        let sub = CMatrix::from_fn(idx.len(), idx.len(), |r, c| op.matrix()[(idx[r], idx[c])]);
        out.extend(eigenvalues(&sub)?);
    }
    Ok(out)
}

/// Exact eigenvalues with multiplicity for levels `0..=n_max`, tagged by level.
pub fn exact_with_multiplicity<T: Real>(mass: T, n_max: usize) -> Vec<(usize, T)> {
    let mut out = vec![(0, mass), (0, -mass)];
    for n in 1..=n_max {
        let r = level(n, mass);
        out.extend([(n, r), (n, r), (n, -r), (n, -r)]);
    }
    out
}

/// Greedy matching: exact values are visited level by level, each claims
/// the nearest numerical eigenvalue not yet claimed. Returns, per level, the
/// largest distance among its claims.
pub fn match_levels<T: Real>(numerical: &[Complex<T>], mass: T, n_max: usize) -> Vec<(usize, T)> {
    let mut claimed = vec![false; numerical.len()];
    let mut errors = vec![T::zero(); n_max + 1];
    for (n, e) in exact_with_multiplicity(mass, n_max) {
        let target = Complex::new(e, T::zero());
        let best = numerical
            .iter()
            .enumerate()
            .filter(|(i, _)| !claimed[*i])
            .map(|(i, z)| (i, (z - target).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
        if let Some((i, d)) = best {
            claimed[i] = true;
            errors[n] = errors[n].max(d);
        } else {
            errors[n] = T::infinity();
        }
    }
    errors.into_iter().enumerate().collect()
}

/// Per-level eigenvalue errors of the truncation of size `N >= 32`, for
/// levels `0..=N/2`.
pub fn galerkin_instability_profile<T: Real>(
    theta: T,
    mass: T,
    n: usize,
) -> Result<Vec<(usize, T)>> {
    if n < 32 {
        return Err(crate::error::Error::BasisTooSmall { got: n, need: 32 });
    }
    let op = build_dirac(&OscillatorParams::new(theta, mass)?, n)?;
    let ev = truncation_eigenvalues(&op)?;
    Ok(match_levels(&ev, mass, n / 2))
}
