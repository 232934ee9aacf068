use rayon::prelude::*;
use serde::Serialize;

use super::fit::FitSamples;
use super::lsq;
use crate::error::{Error, Result};
use crate::frenet::{frenet_apparatus_with, ArclengthMap, FrenetOptions};
use crate::lorentz::Vec4;

/// Origin minimizing `Σ g(α − o, N)²` and the residual it leaves.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OriginShift {
    pub origin: Vec4,
    /// `max |g(α − o, N)|` over the samples.
    pub max_residual: f64,
}

/// Best constant origin for the rectifying condition, by linear least
/// squares: `g(o, N) ≈ g(α, N)` at every sample.
pub fn best_origin_shift(map: &ArclengthMap, samples: &[f64], opts: &FrenetOptions) -> Result<OriginShift> {
    let frames = samples
        .par_iter()
        .map(|&s| frenet_apparatus_with(map, s, opts))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<Vec<f64>> = frames
        .iter()
        .map(|f| {
            let n = f.frame.n;
            vec![-n.x0, n.x1, n.x2, n.x3]
        })
        .collect();
    let rhs: Vec<f64> = frames.iter().map(|f| f.position.dot(f.frame.n)).collect();
    let sol = lsq::solve(&rows, &rhs)?;
    let origin = Vec4::new(sol.coeffs[0], sol.coeffs[1], sol.coeffs[2], sol.coeffs[3]);
    let max_residual = frames.iter().map(|f| (f.position - origin).dot(f.frame.n).abs()).fold(0.0, f64::max);
    Ok(OriginShift { origin, max_residual })
}

/// Grid searches showing that a curve is not congruent to a rectifying one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NonRectifyingWitness {
    /// `max − min` of `κ₁, κ₂, κ₃` over the samples.
    pub kappa_spread: [f64; 3],
    /// Smallest curvature-fit residual over the `c` grid, and where.
    pub min_fit_rms: f64,
    pub argmin_c: f64,
    /// Smallest `max_s |g(α − o, N)|` over the origin grid, and where.
    pub min_origin_residual: f64,
    pub argmin_origin: Vec4,
    pub least_squares: OriginShift,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WitnessGrid {
    pub c_lo: f64,
    pub c_hi: f64,
    pub c_step: f64,
    pub origin_radius: f64,
    pub origin_step: f64,
}

impl Default for WitnessGrid {
    fn default() -> Self {
        Self { c_lo: -10.0, c_hi: 10.0, c_step: 0.01, origin_radius: 5.0, origin_step: 0.5 }
    }
}

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).round() as usize;
    (0..=n).map(|i| lo + i as f64 * step).collect()
}

pub fn non_rectifying_witness(
    map: &ArclengthMap,
    samples: &[f64],
    grid_spec: &WitnessGrid,
    opts: &FrenetOptions,
) -> Result<NonRectifyingWitness> {
    if !(grid_spec.c_step > 0.0 && grid_spec.origin_step > 0.0) {
        return Err(Error::InvalidParameter("grid steps must be positive".into()));
    }
    let data = FitSamples::collect(map, samples, opts)?;
    let mut kappa_spread = [0.0; 3];
    for (i, spread) in kappa_spread.iter_mut().enumerate() {
        let vals = data.frames.iter().map(|f| f.kappas()[i]);
        let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(v), h.max(v)));
        *spread = hi - lo;
    }

    let fits = grid(grid_spec.c_lo, grid_spec.c_hi, grid_spec.c_step)
        .into_par_iter()
        .map(|c| Ok((data.fit_fixed_c(c)?.rms_residual, c)))
        .collect::<Result<Vec<_>>>()?;
    let (min_fit_rms, argmin_c) = fits.into_iter().fold((f64::INFINITY, 0.0), |a, b| if b.0 < a.0 { b } else { a });

    let gan: Vec<f64> = data.frames.iter().map(|f| f.position.dot(f.frame.n)).collect();
    let normals: Vec<Vec4> = data.frames.iter().map(|f| f.frame.n).collect();
    let axis = grid(-grid_spec.origin_radius, grid_spec.origin_radius, grid_spec.origin_step);
    let (min_origin_residual, argmin_origin) = axis
        .par_iter()
        .map(|&x0| {
            let mut best = (f64::INFINITY, Vec4::ZERO);
            for &x1 in &axis {
                for &x2 in &axis {
                    for &x3 in &axis {
                        let o = Vec4::new(x0, x1, x2, x3);
                        let worst = gan.iter().zip(&normals).map(|(g, n)| (g - o.dot(*n)).abs()).fold(0.0, f64::max);
                        if worst < best.0 {
                            best = (worst, o);
                        }
                    }
                }
            }
            best
        })
        .reduce(|| (f64::INFINITY, Vec4::ZERO), |a, b| if b.0 < a.0 { b } else { a });

    Ok(NonRectifyingWitness {
        kappa_spread,
        min_fit_rms,
        argmin_c,
        min_origin_residual,
        argmin_origin,
        least_squares: best_origin_shift(map, samples, opts)?,
    })
}
