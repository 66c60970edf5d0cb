//! Resolvent norms sampled along rays `z = +-m + r e^{i angle}`.

use num_complex::Complex;

use super::field::is_reliable;
use super::regions::resolvent_upper_bound;
use super::resolvent::Resolvent;
use crate::error::{Error, Result};
use crate::operators::{build_dirac, OscillatorParams};
use crate::scalar::{cis, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct RaySample<T> {
    pub r: T,
    pub z: Complex<T>,
    pub norm: T,
    pub reliable: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RayScan<T> {
    pub angle: T,
    /// `+1` for rays from `+m`, `-1` for rays from `-m`.
    pub sign: i8,
    pub samples: Vec<RaySample<T>>,
}

impl<T: Real> RayScan<T> {
    /// Samples outside the reliable window `|z|^2 + m^2 <= N`.
    pub fn unreliable(&self) -> usize {
        self.samples.iter().filter(|s| !s.reliable).count()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.samples.windows(2).all(|w| w[1].norm > w[0].norm)
    }

    /// Samples whose norm exceeds the closed-form bound by more than the
    /// relative slack `tol`; `None` when some sample has no bound.
    pub fn bound_violations(&self, theta: T, mass: T, tol: T) -> Result<Option<usize>> {
        let mut count = 0;
        for s in &self.samples {
            let b = resolvent_upper_bound(s.z, theta, mass)?;
            if b.is_infinite() {
                return Ok(None);
            }
            if s.norm > b * (T::one() + tol) {
                count += 1;
            }
        }
        Ok(Some(count))
    }

    /// CSV with header `r,re,im,resolvent_norm,reliable`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("r,re,im,resolvent_norm,reliable\n");
        for p in &self.samples {
            s.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{},{}\n",
                p.r.to_f64_lossy(),
                p.z.re.to_f64_lossy(),
                p.z.im.to_f64_lossy(),
                super::field::format_value(p.norm.to_f64_lossy()),
                u8::from(p.reliable)
            ));
        }
        s
    }
}

/// Resolvent norms of the size-`N` truncation at `z = sign*m + r e^{i angle}`
/// for increasing offsets `r`.
pub fn ray_scan<T: Real>(
    params: &OscillatorParams<T>,
    n: usize,
    angle: T,
    offsets: &[T],
    sign: i8,
) -> Result<RayScan<T>> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidParameter(format!(
            "ray sign must be +1 or -1, got {sign}"
        )));
    }
    if offsets.is_empty()
        || offsets.iter().any(|&r| !(r > T::zero()))
        || offsets.windows(2).any(|w| w[1] <= w[0])
    {
        return Err(Error::InvalidParameter(
            "ray offsets must be positive and increasing".into(),
        ));
    }
    let op = build_dirac(params, n)?;
    let res = Resolvent::new(&op);
    let base = if sign > 0 { params.mass } else { -params.mass };
    let dir = cis(angle);
    let samples = offsets
        .iter()
        .map(|&r| {
            let z = Complex::new(base, T::zero()) + dir * r;
            let zf = Complex::new(z.re.to_f64_lossy(), z.im.to_f64_lossy());
            RaySample {
                r,
                z,
                norm: res.norm(z),
                reliable: is_reliable(zf, params.mass.to_f64_lossy(), n),
            }
        })
        .collect();
    Ok(RayScan {
        angle,
        sign,
        samples,
    })
}
