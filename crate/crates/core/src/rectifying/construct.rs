use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frenet::{ArclengthMap, GENERIC_ID};
use crate::jets::{eval_curve, CurveJet, CurveSource, CurveSpec, Domain, Jet, Parameterization, SINE_POLE_GUARD};
use crate::lorentz::on_hyperbolic_sphere;

/// Tolerance for the input curve lying on H₀³(1).
pub const SPHERE_TOL: f64 = 1e-10;
/// Number of interior points probed for sphere membership.
const SPHERE_PROBES: usize = 64;

/// Radial factor `ρ(t)` in `α(t) = ρ(t)·y(t)`, `t` the arclength of `y`.
///
/// For `y` unit speed on H₀³(1), `α = ρy` is rectifying iff
/// `(ρρ'/v)' + v = 0` with `v² = ρ² − ρ'²`, whose solutions are
/// `ρ = a·sech(t + t₀)`. The inverse-sine law is kept for comparison with
/// the published example; it does not make `g(α, N)` vanish.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialLaw {
    #[default]
    Sech,
    InverseSine,
}

impl RadialLaw {
    pub fn rho(&self, a: f64, t0: f64, t: &Jet) -> Result<Jet> {
        let x = *t + t0;
        match self {
            RadialLaw::Sech => Jet::constant(a).try_div(&x.cosh()),
            RadialLaw::InverseSine => Jet::constant(a).try_div(&x.sin()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub a: f64,
    pub t0: f64,
    #[serde(default)]
    pub law: RadialLaw,
}

impl ConstructionParams {
    pub fn new(a: f64, t0: f64) -> Self {
        Self { a, t0, law: RadialLaw::Sech }
    }

    pub fn with_law(self, law: RadialLaw) -> Self {
        Self { law, ..self }
    }
}

#[derive(Debug)]
struct ConstructedCurve {
    sphere: ArclengthMap,
    params: ConstructionParams,
    t_lo: f64,
}

impl CurveSource for ConstructedCurve {
    fn id(&self) -> &str {
        GENERIC_ID
    }

    fn params(&self) -> BTreeMap<String, f64> {
        [("a", self.params.a), ("t0", self.params.t0)].into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    fn validate(&self, t: f64) -> Result<()> {
        if self.params.law == RadialLaw::InverseSine && !((t + self.params.t0).sin().abs() > SINE_POLE_GUARD) {
            return Err(Error::PoleEncountered { t });
        }
        Ok(())
    }

    fn eval(&self, t: f64) -> Result<CurveJet> {
        // The sphere curve is followed by its own arclength, anchored so that
        // both parameters agree at the low end.
        let u = self.sphere.t_jet(t - self.t_lo)?;
        let y = eval_curve(self.sphere.spec(), u.value())?.compose(&u);
        let rho = self.params.law.rho(self.params.a, self.params.t0, &Jet::variable(t))?;
        Ok(y.scale_jet(&rho))
    }

    /// With `y` unit speed on H₀³(1), `g(y,y) = −1`, `g(y,y') = 0` and
    /// `g(y',y') = 1`, so `g(α',α') = ρ² − ρ'²` without touching `y`.
    fn speed_sq_jet(&self, t: f64) -> Option<Result<Jet>> {
        let rho = self.params.law.rho(self.params.a, self.params.t0, &Jet::variable(t));
        Some(rho.map(|r| {
            let rp = r.differentiate();
            r * r - rp * rp
        }))
    }
}

/// `α(t) = ρ(t)·y(u(t))` with `u(t)` the arclength reparameterization of
/// the spherical curve `y`, over `[u_lo, u_lo + length(y)]`.
pub fn construct_rectifying(sphere: &CurveSpec, params: ConstructionParams) -> Result<CurveSpec> {
    if !(params.a != 0.0 && params.a.is_finite() && params.t0.is_finite()) {
        return Err(Error::InvalidParameter(format!("construction needs a ≠ 0 (got a = {})", params.a)));
    }
    let d = sphere.domain();
    let mut probes = d.cell_centres(SPHERE_PROBES);
    probes.extend([d.lo, d.hi]);
    for t in probes {
        let p = eval_curve(sphere, t)?.position();
        if !on_hyperbolic_sphere(p, SPHERE_TOL) {
            return Err(Error::NotOnHyperbolicSphere { t, g: p.dot(p) });
        }
    }
    let map = ArclengthMap::new(sphere)?;
    let domain = Domain::new(d.lo, d.lo + map.length())?;
    if params.law == RadialLaw::InverseSine {
        let (x_lo, x_hi) = (domain.lo + params.t0, domain.hi + params.t0);
        let k = (x_lo / PI).ceil();
        if k * PI <= x_hi || x_lo.sin().abs() <= SINE_POLE_GUARD || x_hi.sin().abs() <= SINE_POLE_GUARD {
            return Err(Error::PoleEncountered { t: (k * PI - params.t0).clamp(domain.lo, domain.hi) });
        }
    }
    let curve = ConstructedCurve { sphere: map, params, t_lo: d.lo };
    Ok(CurveSpec::new(Arc::new(curve), domain, Parameterization::Arbitrary))
}

fn pole_at(t: f64) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::DivisionNearZero(_) => Error::PoleEncountered { t },
        other => other,
    }
}

/// `(ρ'/v)' − ρ/v` at `t`, from the jets of `ρ` and `v`.
pub fn rho_ode_residual<R, V>(rho: R, v: V, t: f64) -> Result<f64>
where
    R: Fn(f64) -> Result<Jet>,
    V: Fn(f64) -> Result<Jet>,
{
    let (r, vj) = (rho(t).map_err(pole_at(t))?, v(t).map_err(pole_at(t))?);
    let q = r.differentiate().try_div(&vj).map_err(pole_at(t))?;
    Ok((q.differentiate() - r.try_div(&vj).map_err(pole_at(t))?).value())
}

/// `(ρρ'/v)' + v` with `v = √(ρ² − ρ'²)`: zero exactly when `ρ·y` is
/// rectifying for every unit-speed `y` on H₀³(1).
pub fn radial_rectifying_residual<R>(rho: R, t: f64) -> Result<f64>
where
    R: Fn(f64) -> Result<Jet>,
{
    let r = rho(t).map_err(pole_at(t))?;
    let rp = r.differentiate();
    let v = (r * r - rp * rp).sqrt().map_err(|_| Error::NonSpacelikeVelocity { t, character: "timelike" })?;
    let q = (r * rp).try_div(&v).map_err(pole_at(t))?;
    Ok((q.differentiate() + v).value())
}
