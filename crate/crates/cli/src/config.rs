//! Run configuration: JSON files layered under command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use curvelab::frenet::{ScalarFn, GENERIC_ID};
use curvelab::rectifying::RadialLaw;
use curvelab::reference::PROFILE_RANGE;
use curvelab::{
    catalog_spec, construct_rectifying, synthesize_curve, ConstructionParams, CurvatureProfile, CurveSpec, Frame,
    SynthesisOptions, Tolerances, Vec4,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Environment variable holding a uniform default residual tolerance.
pub const TOL_ENV: &str = "CURVELAB_TOL";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Everything a command can take from a configuration file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<ConstructionConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub synthesis: Option<SynthesisConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Uniform residual tolerance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Per-check tolerances, applied after `tolerance`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceOverrides>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn load_optional(path: Option<&Path>) -> CliResult<Self> {
        path.map_or_else(|| Ok(Self::default()), Self::load)
    }
}

/// A curve by catalog id, or a `generic_rectifying` curve by its recipe.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    pub id: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Box<ConstructionRecipe>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub synthesis: Option<SynthesisConfig>,
}

impl CurveConfig {
    pub fn catalog(id: &str) -> Self {
        Self { id: id.to_string(), params: BTreeMap::new(), domain: None, construction: None, synthesis: None }
    }

    pub fn build(&self) -> CliResult<CurveSpec> {
        if self.id != GENERIC_ID {
            if self.construction.is_some() || self.synthesis.is_some() {
                return Err(CliError::usage(format!("'{}' is a catalog curve and takes no recipe", self.id)));
            }
            let spec = catalog_spec(&self.id, &self.params)?;
            return Ok(match self.domain {
                Some((lo, hi)) => spec.with_domain(lo, hi)?,
                None => spec,
            });
        }
        if !self.params.is_empty() || self.domain.is_some() {
            return Err(CliError::usage(format!("{GENERIC_ID} is defined by its recipe alone")));
        }
        match (&self.construction, &self.synthesis) {
            (Some(c), None) => c.build(),
            (None, Some(s)) => Ok(s.run()?.spec()?),
            _ => Err(CliError::usage(format!("{GENERIC_ID} needs exactly one of 'construction' or 'synthesis'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionRecipe {
    pub sphere: CurveConfig,
    pub a: f64,
    pub t0: f64,
    #[serde(default)]
    pub law: RadialLaw,
}

impl ConstructionRecipe {
    pub fn build(&self) -> CliResult<CurveSpec> {
        let sphere = self.sphere.build()?;
        Ok(construct_rectifying(&sphere, ConstructionParams::new(self.a, self.t0).with_law(self.law))?)
    }
}

/// Construction parameters of a run; the sphere curve is the run's curve.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConstructionConfig {
    pub a: Option<f64>,
    pub t0: Option<f64>,
    pub law: Option<RadialLaw>,
}

/// A curvature profile by built-in id and parameters, or by explicit
/// curvature functions.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProfileConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range: Option<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa1: Option<ScalarFn>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa2: Option<ScalarFn>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa3: Option<ScalarFn>,
}

/// Built-in profile ids.
pub const PROFILE_IDS: [&str; 2] = ["rectifying", "constant"];

fn take_params(id: &str, params: &BTreeMap<String, f64>, allowed: &[(&str, f64)]) -> CliResult<Vec<f64>> {
    if let Some(k) = params.keys().find(|k| !allowed.iter().any(|(a, _)| a == k)) {
        return Err(CliError::usage(format!("profile '{id}' has no parameter '{k}'")));
    }
    Ok(allowed.iter().map(|(name, d)| params.get(*name).copied().unwrap_or(*d)).collect())
}

impl ProfileConfig {
    pub fn build(&self) -> CliResult<CurvatureProfile> {
        let eps = self.eps.unwrap_or(1.0);
        let range = self.range.unwrap_or(PROFILE_RANGE);
        let explicit = [&self.kappa1, &self.kappa2, &self.kappa3];
        match self.id.as_deref() {
            Some(id) if explicit.iter().any(|k| k.is_some()) => {
                Err(CliError::usage(format!("profile '{id}' cannot also set curvature functions")))
            }
            Some(id @ "rectifying") => {
                let v = take_params(id, &self.params, &[("c", 0.0), ("A", 1.0), ("B", 0.0)])?;
                Ok(CurvatureProfile::rectifying(v[0], v[1], v[2], eps, range))
            }
            Some(id @ "constant") => {
                let v = take_params(id, &self.params, &[("k1", 1.0), ("k2", 1.0), ("k3", 1.0)])?;
                Ok(CurvatureProfile::constant([v[0], v[1], v[2]], eps, range))
            }
            Some(other) => Err(CliError::usage(format!(
                "unknown profile '{other}' (built-in: {})",
                PROFILE_IDS.join(", ")
            ))),
            None => match explicit {
                [Some(k1), Some(k2), Some(k3)] => {
                    if !self.params.is_empty() {
                        return Err(CliError::usage("explicit profiles take no parameters"));
                    }
                    Ok(CurvatureProfile {
                        kappa1: k1.clone(),
                        kappa2: k2.clone(),
                        kappa3: k3.clone(),
                        eps,
                        s_range: range,
                    })
                }
                _ => Err(CliError::usage("a profile needs an id or all of kappa1, kappa2, kappa3")),
            },
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthesisConfig {
    pub profile: ProfileConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ds: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start: Option<[f64; 4]>,
    /// Initial frame; the standard frame for the profile's sign by default.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame: Option<Frame>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub synth_tol: Option<f64>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub reproject: bool,
}

/// Default RK4 step.
pub const DEFAULT_DS: f64 = 1e-3;

impl SynthesisConfig {
    pub fn options(&self) -> SynthesisOptions {
        let mut opts = SynthesisOptions::new(self.ds.unwrap_or(DEFAULT_DS));
        if let Some(tol) = self.synth_tol {
            opts.synth_tol = tol;
        }
        opts.reproject = self.reproject;
        opts
    }

    pub fn start(&self) -> Vec4 {
        self.start.map_or(Vec4::ZERO, Vec4::from_array)
    }

    /// Integrates, failing on drift.
    pub fn run(&self) -> CliResult<curvelab::Synthesis> {
        let profile = self.profile.build()?;
        let frame = self.frame.unwrap_or_else(|| Frame::standard(profile.eps));
        Ok(synthesize_curve(&profile, &frame, self.start(), &self.options())?)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToleranceOverrides {
    pub distance_quadratic: Option<f64>,
    pub tangential_linear: Option<f64>,
    pub normal_constancy: Option<f64>,
    pub distance_variation: Option<f64>,
    pub binormal_components: Option<f64>,
    pub curvature_fit: Option<f64>,
    pub constant_vector: Option<f64>,
}

impl ToleranceOverrides {
    fn apply(&self, t: &mut Tolerances) {
        let pairs = [
            (self.distance_quadratic, &mut t.distance_quadratic),
            (self.tangential_linear, &mut t.tangential_linear),
            (self.normal_constancy, &mut t.normal_constancy),
            (self.distance_variation, &mut t.distance_variation),
            (self.binormal_components, &mut t.binormal_components),
            (self.curvature_fit, &mut t.curvature_fit),
            (self.constant_vector, &mut t.constant_vector),
        ];
        for (v, slot) in pairs {
            if let Some(v) = v {
                *slot = v;
            }
        }
    }
}

/// Precedence, lowest first: defaults, `CURVELAB_TOL`, the config's uniform
/// tolerance, its per-check tolerances, the `--tol` flag.
pub fn resolve_tolerances(env: Option<&str>, config: &RunConfig, flag: Option<f64>) -> CliResult<Tolerances> {
    let mut tol = Tolerances::default();
    if let Some(raw) = env {
        let v: f64 = raw
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("{TOL_ENV}={raw:?} is not a number")))?;
        tol = Tolerances::uniform(v);
    }
    if let Some(v) = config.tolerance {
        tol = Tolerances::uniform(v);
    }
    if let Some(o) = &config.tolerances {
        o.apply(&mut tol);
    }
    if let Some(v) = flag {
        tol = Tolerances::uniform(v);
    }
    let all = [
        tol.distance_quadratic,
        tol.tangential_linear,
        tol.normal_constancy,
        tol.distance_variation,
        tol.binormal_components,
        tol.curvature_fit,
        tol.constant_vector,
    ];
    if let Some(bad) = all.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(CliError::usage(format!("tolerances must be positive (got {bad})")));
    }
    Ok(tol)
}

/// Range commands need at least two samples.
pub fn check_samples(n: usize) -> CliResult<usize> {
    if n < 2 {
        return Err(CliError::usage(format!("sample count {n} must be at least 2")));
    }
    Ok(n)
}
