use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::jet::Jet;
use crate::error::{Error, Result};
use crate::lorentz::{causal_character, CausalCharacter, Vec4, CAUSAL_TOL};

/// Taylor jets of the four coordinates of a curve at one parameter value.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CurveJet {
    pub coords: [Jet; 4],
}

impl CurveJet {
    pub const fn new(coords: [Jet; 4]) -> Self {
        Self { coords }
    }

    pub fn constant(p: Vec4) -> Self {
        Self::new(p.to_array().map(Jet::constant))
    }

    pub fn position(&self) -> Vec4 {
        self.derivative(0)
    }

    /// The `k`-th derivative vector.
    pub fn derivative(&self, k: usize) -> Vec4 {
        Vec4::from_array(self.coords.map(|j| j.derivative(k)))
    }

    pub fn differentiate(&self) -> CurveJet {
        CurveJet::new(self.coords.map(|j| j.differentiate()))
    }

    /// Minkowski inner product, jet-valued.
    pub fn dot(&self, o: &CurveJet) -> Jet {
        -(self.coords[0] * o.coords[0])
            + self.coords[1] * o.coords[1]
            + self.coords[2] * o.coords[2]
            + self.coords[3] * o.coords[3]
    }

    pub fn scale_jet(&self, k: &Jet) -> CurveJet {
        CurveJet::new(self.coords.map(|j| j * *k))
    }

    pub fn div_jet(&self, d: &Jet) -> Result<CurveJet> {
        let r = d.recip()?;
        Ok(self.scale_jet(&r))
    }

    /// Reparameterizes through `inner` (see [`Jet::compose`]).
    pub fn compose(&self, inner: &Jet) -> CurveJet {
        CurveJet::new(self.coords.map(|j| j.compose(inner)))
    }

    pub fn translate(mut self, v: Vec4) -> CurveJet {
        for i in 0..4 {
            self.coords[i].c[0] += v[i];
        }
        self
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(Jet::is_finite)
    }
}

impl Add for CurveJet {
    type Output = CurveJet;
    fn add(self, o: CurveJet) -> CurveJet {
        CurveJet::new(std::array::from_fn(|i| self.coords[i] + o.coords[i]))
    }
}

impl Sub for CurveJet {
    type Output = CurveJet;
    fn sub(self, o: CurveJet) -> CurveJet {
        CurveJet::new(std::array::from_fn(|i| self.coords[i] - o.coords[i]))
    }
}

impl Neg for CurveJet {
    type Output = CurveJet;
    fn neg(self) -> CurveJet {
        CurveJet::new(self.coords.map(|j| -j))
    }
}

impl Mul<f64> for CurveJet {
    type Output = CurveJet;
    fn mul(self, k: f64) -> CurveJet {
        CurveJet::new(self.coords.map(|j| j * k))
    }
}

/// Closed parameter interval `[lo, hi]` with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
}

impl Domain {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite domain [{lo}, {hi}]")));
        }
        if !(lo < hi) {
            return Err(Error::OutOfDomain { t: lo, lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Inclusion with a slack of `1e-12` of the width for endpoint roundoff.
    pub fn contains(&self, t: f64) -> bool {
        let slack = 1e-12 * self.width();
        t >= self.lo - slack && t <= self.hi + slack
    }

    pub fn check(&self, t: f64) -> Result<()> {
        if t.is_finite() && self.contains(t) {
            Ok(())
        } else {
            Err(Error::OutOfDomain { t, lo: self.lo, hi: self.hi })
        }
    }

    /// `n` cell-centred points, `lo + (k + ½)·width/n`.
    pub fn cell_centres(&self, n: usize) -> Vec<f64> {
        let h = self.width() / n as f64;
        (0..n).map(|k| self.lo + (k as f64 + 0.5) * h).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parameterization {
    Arbitrary,
    /// The parameter already is arclength (up to a constant).
    Arclength,
}

/// A curve that can produce coordinate jets at a parameter value.
pub trait CurveSource: Send + Sync + fmt::Debug {
    /// Catalog identifier, e.g. `"lorentz_helix"`.
    fn id(&self) -> &str;

    fn params(&self) -> BTreeMap<String, f64> {
        BTreeMap::new()
    }

    /// Validity predicate of the closed form at `t` (poles and the like).
    fn validate(&self, _t: f64) -> Result<()> {
        Ok(())
    }

    fn eval(&self, t: f64) -> Result<CurveJet>;

    /// Jet of `g(α', α')` when a cheaper exact form is known; `None` falls
    /// back to differentiating [`CurveSource::eval`].
    fn speed_sq_jet(&self, _t: f64) -> Option<Result<Jet>> {
        None
    }
}

/// A catalog curve with its domain and parameterization.
#[derive(Clone, Debug)]
pub struct CurveSpec {
    source: Arc<dyn CurveSource>,
    domain: Domain,
    parameterization: Parameterization,
}

impl CurveSpec {
    pub fn new(source: Arc<dyn CurveSource>, domain: Domain, parameterization: Parameterization) -> Self {
        Self { source, domain, parameterization }
    }

    pub fn catalog_id(&self) -> &str {
        self.source.id()
    }

    pub fn params(&self) -> BTreeMap<String, f64> {
        self.source.params()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn parameterization(&self) -> Parameterization {
        self.parameterization
    }

    pub fn source(&self) -> &Arc<dyn CurveSource> {
        &self.source
    }

    pub fn with_domain(&self, lo: f64, hi: f64) -> Result<Self> {
        Ok(Self { domain: Domain::new(lo, hi)?, ..self.clone() })
    }

    /// The same curve with every position shifted by `offset`.
    pub fn translated(&self, offset: Vec4) -> Self {
        Self {
            source: Arc::new(Translated { base: self.clone(), offset }),
            ..self.clone()
        }
    }
}

#[derive(Debug)]
struct Translated {
    base: CurveSpec,
    offset: Vec4,
}

impl CurveSource for Translated {
    fn id(&self) -> &str {
        self.base.catalog_id()
    }

    fn params(&self) -> BTreeMap<String, f64> {
        self.base.params()
    }

    fn validate(&self, t: f64) -> Result<()> {
        self.base.source.validate(t)
    }

    fn eval(&self, t: f64) -> Result<CurveJet> {
        Ok(self.base.source.eval(t)?.translate(self.offset))
    }

    fn speed_sq_jet(&self, t: f64) -> Option<Result<Jet>> {
        self.base.source.speed_sq_jet(t)
    }
}

/// Position and derivatives up to order four at `t`.
pub fn eval_curve(spec: &CurveSpec, t: f64) -> Result<CurveJet> {
    spec.source.validate(t)?;
    spec.domain.check(t)?;
    let jet = spec.source.eval(t).map_err(|e| match e {
        Error::DivisionNearZero(_) => Error::PoleEncountered { t },
        other => other,
    })?;
    if !jet.is_finite() {
        return Err(Error::PoleEncountered { t });
    }
    Ok(jet)
}

/// Jet of `‖α'(t)‖`, exact through order three.
///
/// Fails with `NonSpacelikeVelocity` unless `α'(t)` is spacelike and nonzero.
pub fn speed_jet(spec: &CurveSpec, t: f64) -> Result<Jet> {
    if let Some(sq) = spec.source.speed_sq_jet(t) {
        spec.source.validate(t)?;
        spec.domain.check(t)?;
        let sq = sq?;
        if !(sq.value() > 0.0) {
            let character = if sq.value() < 0.0 { "timelike" } else { "null" };
            return Err(Error::NonSpacelikeVelocity { t, character });
        }
        return sq.sqrt();
    }
    let vel = eval_curve(spec, t)?.differentiate();
    let v = vel.position();
    let character = causal_character(v, CAUSAL_TOL);
    if character != CausalCharacter::Spacelike {
        return Err(Error::NonSpacelikeVelocity { t, character: character.as_str() });
    }
    if v == Vec4::ZERO {
        return Err(Error::NonSpacelikeVelocity { t, character: "zero" });
    }
    vel.dot(&vel).sqrt()
}

/// `‖α'(t)‖` for spacelike curves.
pub fn speed(spec: &CurveSpec, t: f64) -> Result<f64> {
    Ok(speed_jet(spec, t)?.value())
}
