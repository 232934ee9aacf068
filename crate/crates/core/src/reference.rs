//! Reference curves shared by the verification suites, the CLI and the
//! benchmarks.

use crate::error::Result;
use crate::frenet::{synthesize_curve, CurvatureProfile, Frame, Synthesis, SynthesisOptions};
use crate::jets::{CatalogCurve, CurveSpec};
use crate::lorentz::Vec4;
use crate::rectifying::{construct_rectifying, ConstructionParams};

/// Sub-interval of the Clelia curve used for constructions: κ₃ of the
/// result stays well away from zero here.
pub const CONSTRUCTION_SPHERE_DOMAIN: (f64, f64) = (0.55, 0.95);

/// Arclength range of [`rectifying_profile`].
pub const PROFILE_RANGE: (f64, f64) = (0.5, 2.5);

/// Starting point for [`synthesized_rectifying`]; deliberately off the origin
/// so the constant-vector translation has work to do.
pub const SYNTHESIS_START: Vec4 = Vec4 { x0: 0.3, x1: -0.2, x2: 0.1, x3: 0.5 };

pub fn clelia_sphere() -> Result<CurveSpec> {
    let (lo, hi) = CONSTRUCTION_SPHERE_DOMAIN;
    CatalogCurve::HyperbolicClelia.spec().with_domain(lo, hi)
}

/// `α = a·sech(t + t0)·y` over the Clelia curve `y`.
pub fn constructed_clelia(a: f64, t0: f64) -> Result<CurveSpec> {
    construct_rectifying(&clelia_sphere()?, ConstructionParams::new(a, t0))
}

/// Unit-speed helix `(sinh t, cosh t, √2 cos t, √2 sin t)`.
pub fn unit_helix() -> CurveSpec {
    CatalogCurve::LorentzHelix { a: 1.0, p: 1.0, b: 2f64.sqrt(), q: 1.0 }.spec()
}

/// `κ₁ = cosh(s)/s`, `κ₂ = κ₃ = 1`, `ε = 1`: the rectifying family with
/// `c = 0`, `A = 1`, `B = 0`.
pub fn rectifying_profile() -> CurvatureProfile {
    CurvatureProfile::rectifying(0.0, 1.0, 0.0, 1.0, PROFILE_RANGE)
}

pub fn synthesized_rectifying(opts: &SynthesisOptions) -> Result<Synthesis> {
    synthesize_curve(&rectifying_profile(), &Frame::standard(1.0), SYNTHESIS_START, opts)
}
