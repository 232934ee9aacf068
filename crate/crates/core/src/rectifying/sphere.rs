use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frenet::{frenet_apparatus_with, ArclengthMap, FrenetData, FrenetOptions};
use crate::lorentz::Vec4;

/// Default tolerance for declaring a curve hyperbolic-spherical.
pub const CENTER_TOL: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SphericalCenter {
    /// Mean of the pointwise centers.
    pub m: Vec4,
    /// `max ‖m(s) − m(s₀)‖_E` over the samples.
    pub max_drift: f64,
    /// Mean of `g(α − m, α − m)`.
    pub radius_sq: f64,
    /// `max |g(α − m, α − m) − radius_sq|`.
    pub radius_sq_deviation: f64,
}

impl SphericalCenter {
    pub fn is_spherical(&self, tol: f64) -> bool {
        self.max_drift < tol && self.radius_sq_deviation < tol
    }

    /// Spherical with `g(α − m, α − m) < 0`: a hyperbolic sphere rather than
    /// a de Sitter pseudo-sphere.
    pub fn is_hyperbolic_spherical(&self, tol: f64) -> bool {
        self.is_spherical(tol) && self.radius_sq < -tol
    }
}

/// Pointwise center `m(s)` of the osculating pseudo-sphere:
///
/// ```text
/// α − m = −(1/κ₁)N − ε(1/κ₂)(1/κ₁)'B₁ + (1/κ₃)[κ₂/κ₁ + ε((1/κ₂)(1/κ₁)')']B₂
/// ```
///
/// Curvature derivatives come from the extraction jets.
pub fn center_at(f: &FrenetData) -> Vec4 {
    let (k1, k2, k3, e) = (f.kappa1, f.kappa2, f.kappa3, f.eps);
    let u = 1.0 / k1;
    let du = -f.dkappa1 / (k1 * k1);
    let ddu = -f.ddkappa1 / (k1 * k1) + 2.0 * f.dkappa1 * f.dkappa1 / (k1 * k1 * k1);
    let w = du / k2;
    let dw = ddu / k2 - du * f.dkappa2 / (k2 * k2);
    let offset = f.frame.n * (-u) - f.frame.b1 * (e * w) + f.frame.b2 * ((k2 * u + e * dw) / k3);
    f.position - offset
}

pub fn spherical_center(map: &ArclengthMap, samples: &[f64], opts: &FrenetOptions) -> Result<SphericalCenter> {
    if samples.is_empty() {
        return Err(Error::InvalidParameter("no samples".into()));
    }
    let frames = samples
        .par_iter()
        .map(|&s| frenet_apparatus_with(map, s, opts))
        .collect::<Result<Vec<_>>>()?;
    let centers: Vec<Vec4> = frames.iter().map(center_at).collect();
    let n = centers.len() as f64;
    let m = centers.iter().fold(Vec4::ZERO, |a, c| a + *c) / n;
    let max_drift = centers.iter().map(|c| (*c - centers[0]).euclid_norm()).fold(0.0, f64::max);
    let r2: Vec<f64> = frames.iter().map(|f| (f.position - m).dot(f.position - m)).collect();
    let radius_sq = r2.iter().sum::<f64>() / n;
    let radius_sq_deviation = r2.iter().map(|r| (r - radius_sq).abs()).fold(0.0, f64::max);
    Ok(SphericalCenter { m, max_drift, radius_sq, radius_sq_deviation })
}
