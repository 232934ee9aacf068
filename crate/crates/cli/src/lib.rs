//! Command-line front end for `curvelab`: argument parsing, configuration
//! merging and exit-code mapping. The binary is a thin wrapper over [`run`].

pub mod commands;
pub mod config;
pub mod error;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use curvelab::rectifying::RadialLaw;
use curvelab::{FrenetOptions, FrenetSystem};

use crate::commands::Sink;
use crate::config::{
    check_samples, resolve_tolerances, ConstructionRecipe, CurveConfig, Format, ProfileConfig, RunConfig,
    SynthesisConfig,
};
use crate::error::{exit, CliError, CliResult, Status};
use crate::suites::{run_suite, Suite};

pub const DEFAULT_FRENET_SAMPLES: usize = 100;
pub const DEFAULT_CHECK_SAMPLES: usize = 50;
pub const DEFAULT_CONSTRUCT_SAMPLES: usize = 100;

#[derive(Debug, Parser)]
#[command(
    name = "curvelab",
    version,
    about = "Frenet apparatus and rectifying-curve checks for spacelike curves in Minkowski space-time"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the causal character of the velocity at the given parameters.
    Classify(ClassifyArgs),
    /// Tabulate frame, curvatures and Frenet-system residual at arclength samples.
    Frenet(FrenetArgs),
    /// Run the rectifying-curve checks and print a JSON report; exit 1 on a negative verdict.
    RectifyCheck(CheckArgs),
    /// Build a rectifying curve over a curve on the unit hyperbolic sphere.
    Construct(ConstructArgs),
    /// Integrate the Frenet system from a curvature profile.
    Synthesize(SynthesizeArgs),
    /// Run the built-in verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Default, Args)]
pub struct CurveArgs {
    /// JSON run configuration; flags override its values.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Catalog curve id: paper_example, hyperbolic_geodesic, hyperbolic_clelia, lorentz_helix.
    #[arg(long, value_name = "ID")]
    pub curve: Option<String>,
    /// Curve parameter; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE", value_parser = parse_param, allow_hyphen_values = true)]
    pub params: Vec<(String, f64)>,
    /// Parameter interval.
    #[arg(long, value_name = "LO,HI", value_parser = parse_pair, allow_hyphen_values = true)]
    pub domain: Option<(f64, f64)>,
}

#[derive(Debug, Default, Args)]
pub struct OutputArgs {
    /// Write the data here instead of stdout; summary lines still go to stdout.
    #[arg(long, short, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    /// Parameter values; comma-separated or repeated.
    #[arg(long = "at", value_name = "T", value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub at: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct FrenetArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Number of cell-centred arclength samples (default 100).
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Number of cell-centred arclength samples (default 50).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Uniform residual tolerance for every check.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Law {
    /// `a·sech(t + t0)`: the rectifying radial law.
    Sech,
    /// `a/sin(t + t0)`: reproduces the planar inverse-sine curve on the geodesic.
    InverseSine,
}

impl From<Law> for RadialLaw {
    fn from(l: Law) -> Self {
        match l {
            Law::Sech => RadialLaw::Sech,
            Law::InverseSine => RadialLaw::InverseSine,
        }
    }
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// The sphere curve.
    #[command(flatten)]
    pub curve: CurveArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Amplitude of the radial law; must be nonzero (default 1).
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Phase of the radial law (default 0).
    #[arg(long, allow_hyphen_values = true)]
    pub t0: Option<f64>,
    #[arg(long, value_enum)]
    pub law: Option<Law>,
    /// Parameter values to tabulate; cell centres of the domain by default.
    #[arg(long = "at", value_name = "T", value_delimiter = ',', allow_hyphen_values = true)]
    pub at: Vec<f64>,
    /// Number of samples when no --at values are given (default 100).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Save the constructed curve as a configuration for --config.
    #[arg(long, value_name = "PATH")]
    pub register: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthesizeArgs {
    /// JSON run configuration; flags override its `synthesis` section.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Built-in profile: rectifying (c, A, B) or constant (k1, k2, k3).
    #[arg(long, value_name = "ID")]
    pub profile: Option<String>,
    /// Profile parameter; repeatable.
    #[arg(long = "profile-param", value_name = "NAME=VALUE", value_parser = parse_param, allow_hyphen_values = true)]
    pub profile_params: Vec<(String, f64)>,
    /// Profile as JSON, with explicit curvature functions or an id.
    #[arg(long, value_name = "PATH", conflicts_with = "profile")]
    pub profile_file: Option<PathBuf>,
    /// Sign of g(B1, B1): 1 or -1.
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<f64>,
    /// Arclength range.
    #[arg(long, value_name = "LO,HI", value_parser = parse_pair, allow_hyphen_values = true)]
    pub range: Option<(f64, f64)>,
    /// RK4 step (default 1e-3).
    #[arg(long, allow_hyphen_values = true)]
    pub ds: Option<f64>,
    /// Starting point.
    #[arg(long, value_name = "X0,X1,X2,X3", value_parser = parse_point, allow_hyphen_values = true)]
    pub start: Option<[f64; 4]>,
    /// Bound on the Gram drift of the frame.
    #[arg(long)]
    pub synth_tol: Option<f64>,
    /// Re-orthonormalize the frame after every step.
    #[arg(long)]
    pub reproject: bool,
    /// Save the synthesized curve as a configuration for --config.
    #[arg(long, value_name = "PATH")]
    pub register: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Flip the sign of the B1' normal entry of the Frenet system.
    #[arg(long, hide = true)]
    pub mutate: bool,
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got '{s}'"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("'{v}' is not a number"))?;
    Ok((k.trim().to_string(), v))
}

fn parse_floats(s: &str, n: usize) -> Result<Vec<f64>, String> {
    let v = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| format!("'{x}' is not a number")))
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != n {
        return Err(format!("expected {n} comma-separated numbers, got {}", v.len()));
    }
    Ok(v)
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let v = parse_floats(s, 2)?;
    Ok((v[0], v[1]))
}

fn parse_point(s: &str) -> Result<[f64; 4], String> {
    let v = parse_floats(s, 4)?;
    Ok([v[0], v[1], v[2], v[3]])
}

/// The configured curve with flags applied. A `--curve` naming a different
/// id than the file replaces the file's curve entirely.
fn merge_curve(file: Option<CurveConfig>, args: &CurveArgs) -> CliResult<CurveConfig> {
    let mut curve = match (file, &args.curve) {
        (Some(c), Some(id)) if &c.id == id => c,
        (_, Some(id)) => CurveConfig::catalog(id),
        (Some(c), None) => c,
        (None, None) => return Err(CliError::usage("no curve given (--curve or a config file)")),
    };
    curve.params.extend(args.params.iter().cloned());
    if let Some(d) = args.domain {
        curve.domain = Some(d);
    }
    Ok(curve)
}

struct Ctx<'a> {
    env_tol: Option<String>,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn sink(&mut self, cfg: &RunConfig, args: &OutputArgs, default: Format) -> Sink<'_> {
        Sink {
            stdout: &mut *self.out,
            path: args.output.clone().or_else(|| cfg.output.clone()),
            format: args.format.or(cfg.format).unwrap_or(default),
        }
    }
}

/// Parses `args` and runs the command, returning the process exit code.
/// `env_tol` is the value of `CURVELAB_TOL`, if set.
pub fn run<I, T>(args: I, env_tol: Option<String>, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    exit::PASS
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    exit::USAGE
                }
            };
        }
    };
    let mut ctx = Ctx { env_tol, out, err };
    match dispatch(cli.command, &mut ctx) {
        Ok(status) => status.code(),
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            e.code()
        }
    }
}

fn dispatch(command: Command, ctx: &mut Ctx) -> CliResult<Status> {
    match command {
        Command::Classify(a) => {
            let cfg = RunConfig::load_optional(a.curve.config.as_deref())?;
            let spec = merge_curve(cfg.curve, &a.curve)?.build()?;
            commands::classify(&spec, &a.at, ctx.out)
        }
        Command::Frenet(a) => {
            let cfg = RunConfig::load_optional(a.curve.config.as_deref())?;
            let n = check_samples(a.samples.or(cfg.samples).unwrap_or(DEFAULT_FRENET_SAMPLES))?;
            let spec = merge_curve(cfg.curve.clone(), &a.curve)?.build()?;
            commands::frenet(&spec, n, &FrenetOptions::default(), &mut ctx.sink(&cfg, &a.output, Format::Csv))
        }
        Command::RectifyCheck(a) => {
            let cfg = RunConfig::load_optional(a.curve.config.as_deref())?;
            let n = check_samples(a.samples.or(cfg.samples).unwrap_or(DEFAULT_CHECK_SAMPLES))?;
            let tol = resolve_tolerances(ctx.env_tol.as_deref(), &cfg, a.tol)?;
            let spec = merge_curve(cfg.curve.clone(), &a.curve)?.build()?;
            commands::rectify_check(&spec, n, &tol, &mut ctx.sink(&cfg, &a.output, Format::Json))
        }
        Command::Construct(a) => {
            let cfg = RunConfig::load_optional(a.curve.config.as_deref())?;
            let n = check_samples(a.samples.or(cfg.samples).unwrap_or(DEFAULT_CONSTRUCT_SAMPLES))?;
            let file = cfg.construction.unwrap_or_default();
            let recipe = ConstructionRecipe {
                sphere: merge_curve(cfg.curve.clone(), &a.curve)?,
                a: a.a.or(file.a).unwrap_or(1.0),
                t0: a.t0.or(file.t0).unwrap_or(0.0),
                law: a.law.map(RadialLaw::from).or(file.law).unwrap_or_default(),
            };
            let registry = a.register.clone();
            commands::construct(recipe, &a.at, n, registry.as_deref(), &mut ctx.sink(&cfg, &a.output, Format::Csv))
        }
        Command::Synthesize(a) => {
            let cfg = RunConfig::load_optional(a.config.as_deref())?;
            let mut syn = cfg.synthesis.clone().unwrap_or_default();
            if let Some(path) = &a.profile_file {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::usage(format!("cannot read profile {}: {e}", path.display())))?;
                syn.profile = serde_json::from_str::<ProfileConfig>(&text)
                    .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            }
            if let Some(id) = &a.profile {
                if syn.profile.id.as_ref() != Some(id) {
                    syn.profile = ProfileConfig { id: Some(id.clone()), ..Default::default() };
                }
            }
            apply_synthesis_flags(&mut syn, &a);
            let registry = a.register.clone();
            let err = &mut *ctx.err;
            let mut sink = Sink {
                stdout: &mut *ctx.out,
                path: a.output.output.clone().or_else(|| cfg.output.clone()),
                format: a.output.format.or(cfg.format).unwrap_or(Format::Csv),
            };
            commands::synthesize(syn, registry.as_deref(), &mut sink, err)
        }
        Command::Verify(a) => {
            let system = if a.mutate { FrenetSystem::MUTATED } else { FrenetSystem::STANDARD };
            let results = run_suite(a.suite, system);
            for c in &results {
                let mark = if c.pass { "PASS" } else { "FAIL" };
                writeln!(ctx.out, "{mark}  [{}] {}: {}", c.id, c.title, c.detail)?;
            }
            let passed = results.iter().filter(|c| c.pass).count();
            writeln!(ctx.out, "{passed}/{} criteria passed", results.len())?;
            Ok(Status::from_pass(passed == results.len()))
        }
    }
}

fn apply_synthesis_flags(syn: &mut SynthesisConfig, a: &SynthesizeArgs) {
    syn.profile.params.extend(a.profile_params.iter().cloned());
    if a.eps.is_some() {
        syn.profile.eps = a.eps;
    }
    if a.range.is_some() {
        syn.profile.range = a.range;
    }
    if a.ds.is_some() {
        syn.ds = a.ds;
    }
    if a.start.is_some() {
        syn.start = a.start;
    }
    if a.synth_tol.is_some() {
        syn.synth_tol = a.synth_tol;
    }
    syn.reproject |= a.reproject;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsers() {
        assert_eq!(parse_param("A=1.5").unwrap(), ("A".to_string(), 1.5));
        assert!(parse_param("A").is_err());
        assert_eq!(parse_pair("-1,2.5").unwrap(), (-1.0, 2.5));
        assert!(parse_pair("1").is_err());
        assert_eq!(parse_point("0,1,-2,3").unwrap(), [0.0, 1.0, -2.0, 3.0]);
    }

    #[test]
    fn flags_override_the_file_curve() {
        let file = CurveConfig { domain: Some((0.0, 1.0)), ..CurveConfig::catalog("lorentz_helix") };
        let args = CurveArgs { params: vec![("A".into(), 2.0)], domain: Some((-1.0, 1.0)), ..Default::default() };
        let c = merge_curve(Some(file.clone()), &args).unwrap();
        assert_eq!((c.id.as_str(), c.domain, c.params["A"]), ("lorentz_helix", Some((-1.0, 1.0)), 2.0));
        let other = CurveArgs { curve: Some("hyperbolic_clelia".into()), ..Default::default() };
        assert_eq!(merge_curve(Some(file), &other).unwrap(), CurveConfig::catalog("hyperbolic_clelia"));
        assert!(merge_curve(None, &CurveArgs::default()).is_err());
    }

    #[test]
    fn the_command_line_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
