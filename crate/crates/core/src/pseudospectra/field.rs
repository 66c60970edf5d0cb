//! Resolvent-norm fields over rectangular lattices in the complex plane.

use std::fmt::Write as _;

use num_complex::Complex;
use rayon::prelude::*;

use super::resolvent::Resolvent;
use crate::error::{Error, Result};
use crate::operators::{build_dirac, OscillatorParams};
use crate::scalar::Real;

/// Regular lattice `nx x ny` on `[re_min, re_max] x [im_min, im_max]`,
/// endpoints included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Grid {
    pub fn new(
        re_min: f64,
        re_max: f64,
        im_min: f64,
        im_max: f64,
        nx: usize,
        ny: usize,
    ) -> Result<Self> {
        let ok = re_min < re_max && im_min < im_max && nx >= 2 && ny >= 2;
        if !ok
            || ![re_min, re_max, im_min, im_max]
                .iter()
                .all(|v| v.is_finite())
        {
            return Err(Error::InvalidParameter(format!(
                "grid [{re_min}, {re_max}] x [{im_min}, {im_max}] with {nx} x {ny} points"
            )));
        }
        Ok(Grid {
            re_min,
            re_max,
            im_min,
            im_max,
            nx,
            ny,
        })
    }

    /// `[-r, r] x [-r, r]` with `k x k` points.
    pub fn square(r: f64, k: usize) -> Result<Self> {
        Self::new(-r, r, -r, r, k, k)
    }

    /// Parses `re0:re1:im0:im1:nx:ny`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidParameter(format!("grid '{s}' is not re0:re1:im0:im1:nx:ny"));
        if parts.len() != 6 {
            return Err(bad());
        }
        let f = |i: usize| parts[i].trim().parse::<f64>().map_err(|_| bad());
        let u = |i: usize| parts[i].trim().parse::<usize>().map_err(|_| bad());
        Self::new(f(0)?, f(1)?, f(2)?, f(3)?, u(4)?, u(5)?)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn re_step(&self) -> f64 {
        (self.re_max - self.re_min) / (self.nx - 1) as f64
    }

    pub fn im_step(&self) -> f64 {
        (self.im_max - self.im_min) / (self.ny - 1) as f64
    }

    /// Lattice point `(ix, iy)`. The last index lands exactly on the upper
    /// endpoint, and mirrored indices of a symmetric grid give exactly
    /// negated coordinates.
    pub fn point(&self, ix: usize, iy: usize) -> Complex<f64> {
        Complex::new(
            coord(self.re_min, self.re_max, ix, self.nx),
            coord(self.im_min, self.im_max, iy, self.ny),
        )
    }

    /// Row-major index, real part varying fastest.
    pub fn index(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx + ix
    }

    pub fn is_antipodal_symmetric(&self) -> bool {
        self.re_min == -self.re_max && self.im_min == -self.im_max
    }

    pub fn is_conjugation_symmetric(&self) -> bool {
        self.im_min == -self.im_max
    }

    pub fn to_arg_string(&self) -> String {
        format!(
            "{}:{}:{}:{}:{}:{}",
            self.re_min, self.re_max, self.im_min, self.im_max, self.nx, self.ny
        )
    }
}

// symmetric about the midpoint so that a symmetric range mirrors exactly
fn coord(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    let k = (n - 1) as f64;
    let i = i as f64;
    if 2.0 * i <= k {
        lo + (hi - lo) * (i / k)
    } else {
        hi - (hi - lo) * ((k - i) / k)
    }
}

/// Whether `z` lies in the part of the plane a truncation of `basis_size`
/// modes resolves faithfully: `|z|^2 + m^2 <= N`.
pub fn is_reliable(z: Complex<f64>, mass: f64, basis_size: usize) -> bool {
    z.norm_sqr() + mass * mass <= basis_size as f64
}

/// `log10 ||(H - z)^{-1}||` over a grid, `+inf` at numerical eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudospectrumField {
    pub grid: Grid,
    pub theta: f64,
    pub mass: f64,
    pub basis_size: usize,
    /// Row-major, real part fastest.
    pub values: Vec<f64>,
    pub reliable: Vec<bool>,
    /// Points where the evaluation produced NaN.
    pub failures: usize,
}

/// Evaluates the resolvent norm of the fixed truncation of size `N` at every
/// grid point in parallel. Output does not depend on scheduling.
pub fn pseudospectrum_grid<T: Real>(
    params: &OscillatorParams<T>,
    n: usize,
    grid: &Grid,
) -> Result<PseudospectrumField> {
    if n < 32 {
        return Err(Error::BasisTooSmall { got: n, need: 32 });
    }
    let op = build_dirac(params, n)?;
    let res = Resolvent::new(&op);
    let values: Vec<f64> = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let z = grid.point(k % grid.nx, k / grid.nx);
            let norm = res.norm(Complex::new(T::lit(z.re), T::lit(z.im)));
            norm.log10().to_f64_lossy()
        })
        .collect();
    let mass = params.mass.to_f64_lossy();
    let reliable = (0..grid.len())
        .map(|k| is_reliable(grid.point(k % grid.nx, k / grid.nx), mass, n))
        .collect();
    let failures = values.iter().filter(|v| v.is_nan()).count();
    Ok(PseudospectrumField {
        grid: *grid,
        theta: params.theta.to_f64_lossy(),
        mass,
        basis_size: n,
        values,
        reliable,
        failures,
    })
}

fn deviation(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs()
    }
}

impl PseudospectrumField {
    pub fn value(&self, ix: usize, iy: usize) -> f64 {
        self.values[self.grid.index(ix, iy)]
    }

    pub fn point(&self, k: usize) -> Complex<f64> {
        self.grid.point(k % self.grid.nx, k / self.grid.nx)
    }

    fn max_pair_deviation(&self, mirror: impl Fn(usize, usize) -> (usize, usize)) -> f64 {
        let g = &self.grid;
        let mut worst = 0.0f64;
        for iy in 0..g.ny {
            for ix in 0..g.nx {
                let (jx, jy) = mirror(ix, iy);
                worst = worst.max(deviation(self.value(ix, iy), self.value(jx, jy)));
            }
        }
        worst
    }

    /// `max |value(z) - value(-z)|` over the grid.
    pub fn antipodal_deviation(&self) -> Result<f64> {
        if !self.grid.is_antipodal_symmetric() {
            return Err(Error::InvalidParameter(
                "grid is not symmetric about the origin".into(),
            ));
        }
        let (nx, ny) = (self.grid.nx, self.grid.ny);
        Ok(self.max_pair_deviation(|ix, iy| (nx - 1 - ix, ny - 1 - iy)))
    }

    /// `max |value(z) - value(conj z)|` over the grid.
    pub fn conjugation_deviation(&self) -> Result<f64> {
        if !self.grid.is_conjugation_symmetric() {
            return Err(Error::InvalidParameter(
                "grid is not symmetric about the real axis".into(),
            ));
        }
        let ny = self.grid.ny;
        Ok(self.max_pair_deviation(|ix, iy| (ix, ny - 1 - iy)))
    }

    /// Membership in the computed `eps`-pseudospectrum,
    /// `||(H - z)^{-1}|| >= 1/eps`.
    pub fn superlevel_set(&self, eps: f64) -> Vec<bool> {
        let level = -eps.log10();
        self.values.iter().map(|&v| v >= level).collect()
    }

    /// CSV with header `re,im,log10_resnorm,reliable`; `inf` marks
    /// numerical eigenvalues, reliability is written as 1 or 0.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("re,im,log10_resnorm,reliable\n");
        for (k, (&v, &r)) in self.values.iter().zip(&self.reliable).enumerate() {
            let z = self.point(k);
            writeln!(
                s,
                "{:.16e},{:.16e},{},{}",
                z.re,
                z.im,
                format_value(v),
                u8::from(r)
            )
            .unwrap();
        }
        s
    }
}

/// `{:.16e}` formatting with `inf`, `-inf` and `nan` tokens.
pub fn format_value(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v:.16e}")
    }
}
