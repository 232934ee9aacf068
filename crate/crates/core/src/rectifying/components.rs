use serde::Serialize;

use crate::error::Result;
use crate::frenet::{frenet_apparatus_with, ArclengthMap, FrenetData, FrenetOptions};

/// Coefficients of `α = λT + μB₁ + νB₂` (plus an `N` part when the curve is
/// not rectifying).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComponentTriple {
    pub lambda: f64,
    pub mu: f64,
    pub nu: f64,
}

impl ComponentTriple {
    /// Projections of the position onto the frame:
    /// `λ = g(α,T)`, `μ = ε g(α,B₁)`, `ν = −ε g(α,B₂)`.
    pub fn from_projection(f: &FrenetData) -> Self {
        let p = f.position;
        Self {
            lambda: p.dot(f.frame.t),
            mu: f.eps * p.dot(f.frame.b1),
            nu: -f.eps * p.dot(f.frame.b2),
        }
    }

    /// The same coefficients predicted from curvatures alone, given the
    /// tangential offset `c`: `λ = s + c`, `μ = εκ₁λ/κ₂`, `ν = −μ'/κ₃`.
    pub fn from_curvatures(f: &FrenetData, c: f64) -> Self {
        let lambda = f.s + c;
        let mu = f.eps * f.kappa1 * lambda / f.kappa2;
        let dmu = f.eps
            * ((f.dkappa1 * lambda + f.kappa1) / f.kappa2 - f.kappa1 * lambda * f.dkappa2 / (f.kappa2 * f.kappa2));
        Self { lambda, mu, nu: -dmu / f.kappa3 }
    }

    /// `‖λT + μB₁ + νB₂ − α‖_E`.
    pub fn reconstruction_error(&self, f: &FrenetData) -> f64 {
        (f.frame.t * self.lambda + f.frame.b1 * self.mu + f.frame.b2 * self.nu - f.position).euclid_norm()
    }
}

pub fn component_functions(map: &ArclengthMap, s: f64, opts: &FrenetOptions) -> Result<ComponentTriple> {
    Ok(ComponentTriple::from_projection(&frenet_apparatus_with(map, s, opts)?))
}

/// `g(α(s), N(s))`; zero along rectifying curves.
pub fn rectifying_residual(map: &ArclengthMap, s: f64, opts: &FrenetOptions) -> Result<f64> {
    let f = frenet_apparatus_with(map, s, opts)?;
    Ok(f.position.dot(f.frame.n))
}
