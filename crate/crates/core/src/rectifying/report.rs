use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::fit::{FitSamples, CurvatureFit};
use super::lsq::{polyfit, LsqFit};
use crate::error::Result;
use crate::frenet::{ArclengthMap, FrenetOptions};
use crate::jets::Domain;
use crate::lorentz::Vec4;

/// Thresholds for each check of the rectifying battery.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// `|leading − 1|` and fit residual of the quadratic `g(α, α)`.
    pub distance_quadratic: f64,
    /// `|slope − 1|` and fit residual of the linear `g(α, T)`.
    pub tangential_linear: f64,
    /// Spread of `g(αᴺ, αᴺ)`.
    pub normal_constancy: f64,
    /// Minimum spread of `g(α, α)` for the distance to count as non-constant.
    pub distance_variation: f64,
    pub binormal_components: f64,
    pub curvature_fit: f64,
    pub constant_vector: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            distance_quadratic: 1e-6,
            tangential_linear: 1e-8,
            normal_constancy: 1e-7,
            distance_variation: 1e-6,
            binormal_components: 1e-6,
            curvature_fit: 1e-6,
            constant_vector: 1e-6,
        }
    }
}

impl Tolerances {
    /// Every residual threshold set to `tol`. The non-constancy floor is a
    /// lower bound, not a residual, and keeps its default.
    pub fn uniform(tol: f64) -> Self {
        Self {
            distance_quadratic: tol,
            tangential_linear: tol,
            normal_constancy: tol,
            binormal_components: tol,
            curvature_fit: tol,
            constant_vector: tol,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveInfo {
    pub id: String,
    pub params: BTreeMap<String, f64>,
    pub domain: Domain,
}

/// `g(α, α) = ρ² ≈ c₂ + c₁s + leading·s²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DistanceQuadratic {
    pub leading: f64,
    pub c1: f64,
    pub c2: f64,
    pub fit_residual: f64,
    pub pass: bool,
}

/// `g(α, T) ≈ slope·s + c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TangentialLinear {
    pub slope: f64,
    pub c: f64,
    pub fit_residual: f64,
    pub pass: bool,
}

/// `g(αᴺ, αᴺ)` with `αᴺ = α − g(α,T)T`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalConstancy {
    pub a: f64,
    /// `ε(A² − B²)` from the curvature fit.
    pub a_from_fit: f64,
    pub max_deviation: f64,
    /// `max − min` of `g(α, α)`.
    pub distance_spread: f64,
    pub pass: bool,
}

/// `g(α, B₁) = ε(A cosh t + B sinh t)` and `g(α, B₂) = ε(A sinh t + B cosh t)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BinormalComponents {
    pub b1_residual: f64,
    pub b2_residual: f64,
    /// Residual of the variant `ε(A sinh t − B cosh t)` for `g(α, B₂)`.
    pub b2_variant_residual: f64,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PositionChecks {
    pub distance_quadratic: DistanceQuadratic,
    pub tangential_linear: TangentialLinear,
    pub normal_constancy: NormalConstancy,
    pub binormal_components: BinormalComponents,
}

/// All checks of the rectifying battery, run on the curve translated by
/// the constant vector `X(s₀)`.
#[derive(Clone, Debug, Serialize)]
pub struct RectifyingReport {
    pub curve: CurveInfo,
    pub samples: usize,
    #[serde(rename = "thm31")]
    pub curvature_fit: CurvatureFit,
    #[serde(rename = "thm33")]
    pub position_checks: PositionChecks,
    pub constant_vector_drift: f64,
    pub verdict: bool,
    pub tolerances: Tolerances,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub origin_shift: Vec4,
    /// `max |g(α − X(s₀), N)|`.
    #[serde(skip)]
    pub max_rectifying_residual: f64,
}

fn max_abs(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, |m, v| m.max(v.abs()))
}

fn linear_parts(fit: &LsqFit) -> (f64, f64) {
    (fit.coeffs[0], fit.coeffs[1])
}

pub fn rectifying_report(
    map: &ArclengthMap,
    samples: &[f64],
    tol: &Tolerances,
    opts: &FrenetOptions,
) -> Result<RectifyingReport> {
    let data = FitSamples::collect(map, samples, opts)?;
    let fit = data.fit()?;
    let eps = fit.eps;

    let xs: Vec<Vec4> = data.frames.iter().zip(&data.t).map(|(f, t)| fit.constant_vector_at(f, *t)).collect();
    let origin = xs[0];
    let constant_vector_drift = xs.iter().map(|x| (*x - origin).euclid_norm()).fold(0.0, f64::max);

    let s: Vec<f64> = data.frames.iter().map(|f| f.s).collect();
    let pos: Vec<Vec4> = data.frames.iter().map(|f| f.position - origin).collect();

    let dist: Vec<f64> = pos.iter().map(|p| p.dot(*p)).collect();
    let quad = polyfit(&s, &dist, 2)?;
    let distance_quadratic = DistanceQuadratic {
        leading: quad.coeffs[2],
        c1: quad.coeffs[1],
        c2: quad.coeffs[0],
        fit_residual: quad.rms_residual,
        pass: (quad.coeffs[2] - 1.0).abs() <= tol.distance_quadratic && quad.rms_residual <= tol.distance_quadratic,
    };

    let tang: Vec<f64> = pos.iter().zip(&data.frames).map(|(p, f)| p.dot(f.frame.t)).collect();
    let lin = polyfit(&s, &tang, 1)?;
    let (c, slope) = linear_parts(&lin);
    let tangential_linear = TangentialLinear {
        slope,
        c,
        fit_residual: lin.rms_residual,
        pass: (slope - 1.0).abs() <= tol.tangential_linear && lin.rms_residual <= tol.tangential_linear,
    };

    let normal: Vec<f64> = pos
        .iter()
        .zip(&data.frames)
        .zip(&tang)
        .map(|((p, f), l)| {
            let pn = *p - f.frame.t * *l;
            pn.dot(pn)
        })
        .collect();
    let a = normal.iter().sum::<f64>() / normal.len() as f64;
    let max_deviation = max_abs(normal.iter().map(|v| v - a));
    let spread = |v: &[f64]| {
        v.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - v.iter().cloned().fold(f64::INFINITY, f64::min)
    };
    let distance_spread = spread(&dist);
    let normal_constancy = NormalConstancy {
        a,
        a_from_fit: eps * (fit.a * fit.a - fit.b * fit.b),
        max_deviation,
        distance_spread,
        pass: max_deviation <= tol.normal_constancy && distance_spread > tol.distance_variation,
    };

    let (ca, cb) = (fit.a, fit.b);
    let comp = |f: fn(&(f64, f64, f64, f64)) -> f64| {
        max_abs(pos.iter().zip(&data.frames).zip(&data.t).map(|((p, fr), t)| {
            let (ch, sh) = (t.cosh(), t.sinh());
            f(&(p.dot(fr.frame.b1) - eps * (ca * ch + cb * sh), p.dot(fr.frame.b2), eps * (ca * sh + cb * ch), eps * (ca * sh - cb * ch)))
        }))
    };
    let b1_residual = comp(|r| r.0);
    let b2_residual = comp(|r| r.1 - r.2);
    let b2_variant_residual = comp(|r| r.1 - r.3);
    let binormal_components = BinormalComponents {
        b1_residual,
        b2_residual,
        b2_variant_residual,
        pass: b1_residual.max(b2_residual) <= tol.binormal_components,
    };

    let max_rectifying_residual = max_abs(pos.iter().zip(&data.frames).map(|(p, f)| p.dot(f.frame.n)));

    let mut warnings = Vec::new();
    if (b2_variant_residual - b2_residual).abs() > tol.binormal_components {
        warnings.push(format!(
            "binormal sign: g(alpha,B2) = eps(A sinh t + B cosh t) leaves residual {b2_residual:e}; \
             the variant eps(A sinh t - B cosh t) leaves {b2_variant_residual:e} (B = {cb:e})"
        ));
    }

    let position_checks = PositionChecks { distance_quadratic, tangential_linear, normal_constancy, binormal_components };
    let verdict = distance_quadratic.pass
        && tangential_linear.pass
        && normal_constancy.pass
        && binormal_components.pass
        && fit.rms_residual <= tol.curvature_fit
        && constant_vector_drift <= tol.constant_vector;

    let spec = map.spec();
    Ok(RectifyingReport {
        curve: CurveInfo { id: spec.catalog_id().to_string(), params: spec.params(), domain: spec.domain() },
        samples: samples.len(),
        curvature_fit: fit,
        position_checks,
        constant_vector_drift,
        verdict,
        tolerances: *tol,
        warnings,
        origin_shift: origin,
        max_rectifying_residual,
    })
}
