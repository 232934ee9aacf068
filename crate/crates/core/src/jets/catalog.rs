//! Named closed-form curves.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::curve::{CurveJet, CurveSource, CurveSpec, Domain, Parameterization};
use super::jet::Jet;
use crate::error::{Error, Result};

/// `|sin(t + s0)|` must exceed this for the inverse-sine example curve.
pub const SINE_POLE_GUARD: f64 = 1e-6;

/// Catalog entries with closed-form coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CatalogCurve {
    /// `(a / sin(t + s0)) · (cosh t, 0, sinh t, 0)`.
    InverseSineGeodesic { a: f64, s0: f64 },
    /// `(cosh t, 0, sinh t, 0)`, a unit-speed geodesic of H₀³(1).
    HyperbolicGeodesic,
    /// `(cosh t, sinh t cos t, sinh t sin t cos t, sinh t sin² t)` on H₀³(1).
    HyperbolicClelia,
    /// `(A sinh pt, A cosh pt, B cos qt, B sin qt)`; unit speed when
    /// `B²q² − A²p² = 1`, with constant curvatures.
    LorentzHelix { a: f64, p: f64, b: f64, q: f64 },
}

pub const CATALOG_IDS: [&str; 4] =
    ["paper_example", "hyperbolic_geodesic", "hyperbolic_clelia", "lorentz_helix"];

fn take(params: &BTreeMap<String, f64>, allowed: &[(&str, f64)], id: &str) -> Result<Vec<f64>> {
    if let Some(k) = params.keys().find(|k| !allowed.iter().any(|(a, _)| a == k)) {
        return Err(Error::InvalidParameter(format!("'{id}' has no parameter '{k}'")));
    }
    allowed
        .iter()
        .map(|(name, default)| {
            let v = params.get(*name).copied().unwrap_or(*default);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::InvalidParameter(format!("{name} = {v}")))
            }
        })
        .collect()
}

impl CatalogCurve {
    /// Looks up `id`, filling unspecified parameters with defaults.
    pub fn from_id(id: &str, params: &BTreeMap<String, f64>) -> Result<Self> {
        match id {
            "paper_example" => {
                let v = take(params, &[("a", 1.0), ("s0", 0.0)], id)?;
                if v[0] == 0.0 {
                    return Err(Error::InvalidParameter("a must be nonzero".into()));
                }
                Ok(CatalogCurve::InverseSineGeodesic { a: v[0], s0: v[1] })
            }
            "hyperbolic_geodesic" => {
                take(params, &[], id)?;
                Ok(CatalogCurve::HyperbolicGeodesic)
            }
            "hyperbolic_clelia" => {
                take(params, &[], id)?;
                Ok(CatalogCurve::HyperbolicClelia)
            }
            "lorentz_helix" => {
                let v = take(
                    params,
                    &[("A", 1.0), ("p", 1.0), ("B", std::f64::consts::SQRT_2), ("q", 1.0)],
                    id,
                )?;
                Ok(CatalogCurve::LorentzHelix { a: v[0], p: v[1], b: v[2], q: v[3] })
            }
            other => Err(Error::UnknownCurve(other.to_string())),
        }
    }

    pub fn default_domain(&self) -> Domain {
        let (lo, hi) = match *self {
            // Spacelike only while t + s0 ∈ (π/4, 3π/4).
            CatalogCurve::InverseSineGeodesic { s0, .. } => (0.9 - s0, 2.2 - s0),
            CatalogCurve::HyperbolicGeodesic => (-2.0, 2.0),
            // The first binormal turns null near t ≈ 0.81.
            CatalogCurve::HyperbolicClelia => (0.2, 0.7),
            CatalogCurve::LorentzHelix { .. } => (-2.0, 2.0),
        };
        Domain { lo, hi }
    }

    /// Whether every point lies on H₀³(1).
    pub fn on_hyperbolic_sphere(&self) -> bool {
        matches!(self, CatalogCurve::HyperbolicGeodesic | CatalogCurve::HyperbolicClelia)
    }

    /// A [`CurveSpec`] over the default domain.
    pub fn spec(self) -> CurveSpec {
        let domain = self.default_domain();
        CurveSpec::new(Arc::new(self), domain, Parameterization::Arbitrary)
    }
}

impl CurveSource for CatalogCurve {
    fn id(&self) -> &str {
        match self {
            CatalogCurve::InverseSineGeodesic { .. } => CATALOG_IDS[0],
            CatalogCurve::HyperbolicGeodesic => CATALOG_IDS[1],
            CatalogCurve::HyperbolicClelia => CATALOG_IDS[2],
            CatalogCurve::LorentzHelix { .. } => CATALOG_IDS[3],
        }
    }

    fn params(&self) -> BTreeMap<String, f64> {
        let pairs: Vec<(&str, f64)> = match *self {
            CatalogCurve::InverseSineGeodesic { a, s0 } => vec![("a", a), ("s0", s0)],
            CatalogCurve::LorentzHelix { a, p, b, q } => vec![("A", a), ("p", p), ("B", b), ("q", q)],
            _ => vec![],
        };
        pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    fn validate(&self, t: f64) -> Result<()> {
        if let CatalogCurve::InverseSineGeodesic { s0, .. } = *self {
            if !((t + s0).sin().abs() > SINE_POLE_GUARD) {
                return Err(Error::PoleEncountered { t });
            }
        }
        Ok(())
    }

    fn eval(&self, t: f64) -> Result<CurveJet> {
        let x = Jet::variable(t);
        let zero = Jet::constant(0.0);
        Ok(match *self {
            CatalogCurve::InverseSineGeodesic { a, s0 } => {
                let rho = Jet::constant(a).try_div(&(x + s0).sin())?;
                let (sh, ch) = x.sinh_cosh();
                CurveJet::new([rho * ch, zero, rho * sh, zero])
            }
            CatalogCurve::HyperbolicGeodesic => {
                let (sh, ch) = x.sinh_cosh();
                CurveJet::new([ch, zero, sh, zero])
            }
            CatalogCurve::HyperbolicClelia => {
                let (sh, ch) = x.sinh_cosh();
                let (s, c) = x.sin_cos();
                let shs = sh * s;
                CurveJet::new([ch, sh * c, shs * c, shs * s])
            }
            CatalogCurve::LorentzHelix { a, p, b, q } => {
                let (sh, ch) = (x * p).sinh_cosh();
                let (s, c) = (x * q).sin_cos();
                CurveJet::new([sh * a, ch * a, c * b, s * b])
            }
        })
    }
}

/// Builds a catalog spec from an id and parameter map.
pub fn catalog_spec(id: &str, params: &BTreeMap<String, f64>) -> Result<CurveSpec> {
    Ok(CatalogCurve::from_id(id, params)?.spec())
}
