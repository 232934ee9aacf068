use rayon::prelude::*;
use serde::Serialize;

use super::lsq;
use crate::error::{Error, Result};
use crate::frenet::{frenet_apparatus_with, ArclengthMap, FrenetData, FrenetOptions};
use crate::jets::Domain;
use crate::lorentz::Vec4;
use crate::quadrature::gauss_legendre;

/// Minimum number of samples for the curvature fit.
pub const MIN_FIT_SAMPLES: usize = 8;
const PANEL_WIDTH: f64 = 0.05;

/// `t(s) = ∫_{s_base}^s κ₃`, tabulated on panels with a fixed
/// Gauss–Legendre rule per panel.
#[derive(Clone, Debug)]
pub struct Kappa3Integral {
    map: ArclengthMap,
    opts: FrenetOptions,
    knots: Vec<f64>,
    cumulative: Vec<f64>,
}

impl Kappa3Integral {
    /// Table over `[s_base, s_end]`.
    pub fn new(map: &ArclengthMap, s_base: f64, s_end: f64, opts: &FrenetOptions) -> Result<Self> {
        let range = Domain::new(s_base, s_end)?;
        let n = ((range.width() / PANEL_WIDTH).ceil() as usize).max(1);
        let h = range.width() / n as f64;
        let mut knots: Vec<f64> = (0..n).map(|i| s_base + i as f64 * h).collect();
        knots.push(s_end);
        let k3 = |s: f64| Ok(frenet_apparatus_with(map, s, opts)?.kappa3);
        let panels =
            knots.par_windows(2).map(|w| gauss_legendre(k3, w[0], w[1])).collect::<Result<Vec<_>>>()?;
        let mut cumulative = vec![0.0];
        for p in panels {
            cumulative.push(cumulative.last().unwrap() + p);
        }
        Ok(Self { map: map.clone(), opts: *opts, knots, cumulative })
    }

    /// Table over the whole arclength range of `map`, based at its start.
    pub fn over(map: &ArclengthMap, opts: &FrenetOptions) -> Result<Self> {
        Self::new(map, 0.0, map.length(), opts)
    }

    pub fn s_base(&self) -> f64 {
        self.knots[0]
    }

    pub fn at(&self, s: f64) -> Result<f64> {
        Domain { lo: self.knots[0], hi: *self.knots.last().unwrap() }.check(s)?;
        let k = self.knots.partition_point(|&x| x <= s).clamp(1, self.knots.len() - 1) - 1;
        let k3 = |x: f64| Ok(frenet_apparatus_with(&self.map, x, &self.opts)?.kappa3);
        Ok(self.cumulative[k] + gauss_legendre(k3, self.knots[k], s)?)
    }
}

/// `∫_{s_base}^s κ₃(σ) dσ` along the curve.
pub fn integrate_kappa3(map: &ArclengthMap, s_base: f64, s: f64, opts: &FrenetOptions) -> Result<f64> {
    if s == s_base {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if s > s_base { (s_base, s, 1.0) } else { (s, s_base, -1.0) };
    Ok(sign * Kappa3Integral::new(map, lo, hi, opts)?.at(hi)?)
}

/// Frames and curvature data at a list of sample points, with `ε` checked
/// to be the same everywhere.
#[derive(Clone, Debug)]
pub struct FitSamples {
    pub eps: f64,
    pub frames: Vec<FrenetData>,
    /// `∫κ₃` from the start of the curve at each sample.
    pub t: Vec<f64>,
    pub kappa3: Kappa3Integral,
}

impl FitSamples {
    pub fn collect(map: &ArclengthMap, samples: &[f64], opts: &FrenetOptions) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::IllConditionedFit { condition: f64::INFINITY });
        }
        let frames = samples
            .par_iter()
            .map(|&s| frenet_apparatus_with(map, s, opts))
            .collect::<Result<Vec<_>>>()?;
        let eps = frames[0].eps;
        if frames.iter().any(|f| f.eps != eps) {
            return Err(Error::EpsilonChanges);
        }
        let kappa3 = Kappa3Integral::over(map, opts)?;
        let t = samples.par_iter().map(|&s| kappa3.at(s)).collect::<Result<Vec<_>>>()?;
        Ok(Self { eps, frames, t, kappa3 })
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// `εκ₁/κ₂` at each sample.
    fn ratios(&self) -> Vec<f64> {
        self.frames.iter().map(|f| self.eps * f.kappa1 / f.kappa2).collect()
    }

    fn rms(&self, c: f64, a: f64, b: f64) -> f64 {
        let sum: f64 = self
            .frames
            .iter()
            .zip(self.ratios())
            .zip(&self.t)
            .map(|((f, r), t)| (r * (f.s + c) - (a * t.cosh() + b * t.sinh())).powi(2))
            .sum();
        (sum / self.len() as f64).sqrt()
    }

    /// Fit of `εκ₁(s + c)/κ₂ = A cosh t + B sinh t` with `c` free.
    ///
    /// The relation is linear in `(c, A, B)`, so all three come from one
    /// least-squares solve.
    pub fn fit(&self) -> Result<CurvatureFit> {
        if self.len() < MIN_FIT_SAMPLES {
            return Err(Error::IllConditionedFit { condition: f64::INFINITY });
        }
        let ratios = self.ratios();
        let rows: Vec<Vec<f64>> =
            ratios.iter().zip(&self.t).map(|(r, t)| vec![-r, t.cosh(), t.sinh()]).collect();
        let rhs: Vec<f64> = ratios.iter().zip(&self.frames).map(|(r, f)| r * f.s).collect();
        let sol = lsq::solve(&rows, &rhs)?;
        let [c, a, b] = [sol.coeffs[0], sol.coeffs[1], sol.coeffs[2]];
        Ok(self.finish(c, a, b, sol.condition))
    }

    /// Fit of `(A, B)` with `c` held fixed.
    pub fn fit_fixed_c(&self, c: f64) -> Result<CurvatureFit> {
        if self.len() < MIN_FIT_SAMPLES {
            return Err(Error::IllConditionedFit { condition: f64::INFINITY });
        }
        let rows: Vec<Vec<f64>> = self.t.iter().map(|t| vec![t.cosh(), t.sinh()]).collect();
        let rhs: Vec<f64> = self.ratios().iter().zip(&self.frames).map(|(r, f)| r * (f.s + c)).collect();
        let sol = lsq::solve(&rows, &rhs)?;
        Ok(self.finish(c, sol.coeffs[0], sol.coeffs[1], sol.condition))
    }

    fn finish(&self, c: f64, a: f64, b: f64, condition: f64) -> CurvatureFit {
        CurvatureFit {
            c,
            a,
            b,
            eps: self.eps,
            rms_residual: self.rms(c, a, b),
            condition,
            kappa3: self.kappa3.clone(),
        }
    }
}

/// Constants of `εκ₁(s)(s + c)/κ₂(s) = A cosh t(s) + B sinh t(s)`,
/// `t(s) = ∫κ₃` from the start of the curve.
#[derive(Clone, Debug, Serialize)]
pub struct CurvatureFit {
    pub c: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub eps: f64,
    pub rms_residual: f64,
    #[serde(skip)]
    pub condition: f64,
    #[serde(skip)]
    pub kappa3: Kappa3Integral,
}

impl CurvatureFit {
    /// `(c, A, B)` after shifting the origins of `s` and `t` by `ds` and
    /// `dt` (new = old + shift).
    pub fn rebased(&self, ds: f64, dt: f64) -> (f64, f64, f64) {
        let (ch, sh) = (dt.cosh(), dt.sinh());
        (self.c - ds, self.a * ch - self.b * sh, self.b * ch - self.a * sh)
    }

    /// `(μ, ν)` predicted by the fit at curve parameter `t`.
    pub fn mu_nu(&self, t: f64) -> (f64, f64) {
        let (ch, sh) = (t.cosh(), t.sinh());
        (self.a * ch + self.b * sh, -(self.a * sh + self.b * ch))
    }

    /// `X = α − (s + c)T − μB₁ − νB₂`, constant along curves congruent to
    /// rectifying ones.
    pub fn constant_vector_at(&self, f: &FrenetData, t: f64) -> Vec4 {
        let (mu, nu) = self.mu_nu(t);
        f.position - f.frame.t * (f.s + self.c) - f.frame.b1 * mu - f.frame.b2 * nu
    }
}

pub fn fit_curvature_relation(map: &ArclengthMap, samples: &[f64], opts: &FrenetOptions) -> Result<CurvatureFit> {
    if samples.len() < MIN_FIT_SAMPLES {
        return Err(Error::IllConditionedFit { condition: f64::INFINITY });
    }
    FitSamples::collect(map, samples, opts)?.fit()
}

pub fn constant_vector_x(map: &ArclengthMap, s: f64, fit: &CurvatureFit, opts: &FrenetOptions) -> Result<Vec4> {
    let f = frenet_apparatus_with(map, s, opts)?;
    Ok(fit.constant_vector_at(&f, fit.kappa3.at(s)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rebasing_is_a_hyperbolic_rotation() {
        let map = ArclengthMap::new(&crate::jets::CatalogCurve::HyperbolicGeodesic.spec()).unwrap();
        let fit = CurvatureFit {
            c: 0.2,
            a: 1.3,
            b: -0.4,
            eps: 1.0,
            rms_residual: 0.0,
            condition: 1.0,
            kappa3: Kappa3Integral {
                map,
                opts: FrenetOptions::default(),
                knots: vec![0.0, 1.0],
                cumulative: vec![0.0, 1.0],
            },
        };
        let (dt, t_old) = (0.35, 0.8);
        let (_, a, b) = fit.rebased(0.0, dt);
        let t_new = t_old + dt;
        let old = fit.a * f64::cosh(t_old) + fit.b * f64::sinh(t_old);
        let new = a * f64::cosh(t_new) + b * f64::sinh(t_new);
        assert!((old - new).abs() < 1e-14);
        assert!((fit.rebased(0.5, 0.0).0 + 0.3).abs() < 1e-15);
    }
}
