//! Calibration of the inner-region constants and consistency checks of a
//! computed field against both regions and the resolvent bound.

use num_complex::Complex;
use rayon::prelude::*;

use super::field::{is_reliable, pseudospectrum_grid, Grid, PseudospectrumField};
use super::regions::{
    inner_region_member, outer_region_member, resolvent_upper_bound, RegionParams,
};
use super::resolvent::Resolvent;
use crate::error::{Error, Result};
use crate::operators::{build_dirac, OscillatorParams};
use crate::scalar::Real;

/// Relative slack for upper-bound comparisons.
pub const BOUND_SLACK: f64 = 1e-6;

/// Safety factor applied to the fitted slope `c2`.
pub const C2_SAFETY: f64 = 1.5;

/// Measured constants of the inner region and the data they came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Calibration {
    pub theta: f64,
    pub mass: f64,
    pub basis_size: usize,
    pub delta: f64,
    /// `(eps, R(eps))`: the smallest sampled `|z^2 - m^2|` from which on
    /// every sector sample has resolvent norm above `1/eps`.
    pub radii: Vec<(f64, f64)>,
    pub c1: f64,
    pub c2: f64,
}

impl Calibration {
    pub fn region_params(&self) -> Result<RegionParams<f64>> {
        RegionParams::new(self.delta, self.c1, self.c2)
    }
}

/// Fixes `c1`, `c2` for the sector `|arg(z^2 - m^2)| <= |theta| - delta`.
///
/// Sector samples `w = rho e^{i phi}`, `z = sqrt(m^2 + w)`, cover radii up to
/// the edge of the reliable window. `R(eps)` is the smallest radius beyond
/// which all samples exceed `1/eps`. Then `c1 = R(eps_list[0])` and `c2` is
/// [`C2_SAFETY`] times the least-squares slope through the origin of `R`
/// against `ln(1/eps^2)`.
pub fn calibrate<T: Real>(
    params: &OscillatorParams<T>,
    n: usize,
    delta: f64,
    eps_list: &[f64],
) -> Result<Calibration> {
    let theta = params.theta.to_f64_lossy().abs();
    let mass = params.mass.to_f64_lossy();
    if !(delta > 0.0 && delta < theta) {
        return Err(Error::InvalidParameter(format!(
            "delta {delta} must lie in (0, |theta|) = (0, {theta})"
        )));
    }
    if eps_list.is_empty() || eps_list.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
        return Err(Error::InvalidParameter(
            "calibration needs eps values in (0, 1)".into(),
        ));
    }
    let rho_max = n as f64 - 2.0 * mass * mass;
    let rho_step = 0.5;
    let radii: Vec<f64> = (1..)
        .map(|k| k as f64 * rho_step)
        .take_while(|&r| r <= rho_max)
        .collect();
    if radii.is_empty() {
        return Err(Error::BasisTooSmall {
            got: n,
            need: (2.0 * mass * mass + 1.0).ceil() as usize,
        });
    }
    let n_angles = 21;
    let half = theta - delta;
    let op = build_dirac(params, n)?;
    let res = Resolvent::new(&op);
    // smallest norm over the angular samples of each radius
    let floor: Vec<f64> = radii
        .par_iter()
        .map(|&rho| {
            (0..n_angles)
                .map(|k| {
                    let phi = -half + 2.0 * half * k as f64 / (n_angles - 1) as f64;
                    let w = Complex::from_polar(rho, phi);
                    let z = (w + mass * mass).sqrt();
                    res.norm(Complex::new(T::lit(z.re), T::lit(z.im)))
                        .to_f64_lossy()
                })
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mut found = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let target = 1.0 / eps;
        // first index after the last radius that fails
        let start = floor
            .iter()
            .rposition(|&v| !(v > target))
            .map_or(0, |i| i + 1);
        if start == radii.len() {
            return Err(Error::InvalidParameter(format!(
                "calibration: norm 1/eps = {target} not reached inside the reliable window of N = {n}"
            )));
        }
        found.push((eps, radii[start]));
    }
    let c1 = found[0].1;
    let (sxy, sxx) = found.iter().fold((0.0, 0.0), |(a, b), &(eps, r)| {
        let x = (1.0 / (eps * eps)).ln();
        (a + x * r, b + x * x)
    });
    let c2 = C2_SAFETY * sxy / sxx;
    Ok(Calibration {
        theta: params.theta.to_f64_lossy(),
        mass,
        basis_size: n,
        delta,
        radii: found,
        c1,
        c2,
    })
}

/// Counts from comparing a field with both regions and the bound. Points
/// outside the reliable window are excluded from every count.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelSetReport {
    pub eps: f64,
    /// Reliable points inside the inner region.
    pub inner_points: usize,
    /// Of those, points with norm `<= 1/eps`.
    pub inner_violations: usize,
    /// Reliable points outside the outer region.
    pub outer_points: usize,
    /// Of those, points with norm `> (1/eps)(1 + BOUND_SLACK)`.
    pub outer_violations: usize,
    /// Reliable points where the resolvent bound applies.
    pub bound_points: usize,
    /// Of those, points with norm above the bound times `1 + BOUND_SLACK`.
    pub bound_violations: usize,
    /// Largest ratio of computed norm to bound.
    pub worst_bound_ratio: f64,
    pub unreliable: usize,
}

impl LevelSetReport {
    pub fn passed(&self) -> bool {
        self.inner_violations == 0 && self.outer_violations == 0 && self.bound_violations == 0
    }
}

/// Checks an already computed field. With `|theta| <= delta` (or no region
/// parameters) the inner region is empty.
pub fn level_set_report(
    field: &PseudospectrumField,
    eps: f64,
    rp: Option<&RegionParams<f64>>,
) -> Result<LevelSetReport> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "eps must lie in (0, 1), got {eps}"
        )));
    }
    let (theta, mass) = (field.theta, field.mass);
    let level = (1.0 / eps).log10();
    let slack = (1.0 + BOUND_SLACK).log10();
    let inner_on = rp.filter(|p| p.delta < theta.abs());
    let mut rep = LevelSetReport {
        eps,
        inner_points: 0,
        inner_violations: 0,
        outer_points: 0,
        outer_violations: 0,
        bound_points: 0,
        bound_violations: 0,
        worst_bound_ratio: 0.0,
        unreliable: 0,
    };
    for (k, &v) in field.values.iter().enumerate() {
        let z = field.point(k);
        if !is_reliable(z, mass, field.basis_size) {
            rep.unreliable += 1;
            continue;
        }
        if let Some(p) = inner_on {
            if inner_region_member(z, theta, mass, eps, p)? {
                rep.inner_points += 1;
                if !(v > level) {
                    rep.inner_violations += 1;
                }
            }
        }
        if !outer_region_member(z, theta, mass, eps)? {
            rep.outer_points += 1;
            if !(v <= level + slack) {
                rep.outer_violations += 1;
            }
        }
        let b = resolvent_upper_bound(z, theta, mass)?;
        if b.is_finite() {
            rep.bound_points += 1;
            let ratio = 10f64.powf(v) / b;
            rep.worst_bound_ratio = rep.worst_bound_ratio.max(ratio);
            if !(v <= b.log10() + slack) {
                rep.bound_violations += 1;
            }
        }
    }
    Ok(rep)
}

/// Computes the field of the size-`N` truncation on `grid` and checks it.
pub fn level_set_consistency<T: Real>(
    params: &OscillatorParams<T>,
    n: usize,
    grid: &Grid,
    eps: f64,
    rp: Option<&RegionParams<f64>>,
) -> Result<(PseudospectrumField, LevelSetReport)> {
    let field = pseudospectrum_grid(params, n, grid)?;
    let report = level_set_report(&field, eps, rp)?;
    Ok((field, report))
}
