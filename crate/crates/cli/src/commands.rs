//! The command implementations, independent of argument parsing.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use curvelab::frenet::{frenet_apparatus_with, GENERIC_ID};
use curvelab::lorentz::CAUSAL_TOL;
use curvelab::{
    arclength_map, causal_character, eval_curve, frenet_ode_residual, rectifying_report, CausalCharacter,
    CurveSpec, Error, FrenetData, FrenetOptions, RectifyingReport, Synthesis, Tolerances, Vec4,
};
use serde::Serialize;

use crate::config::{ConstructionRecipe, CurveConfig, Format, RunConfig, SynthesisConfig};
use crate::error::{CliError, CliResult, Status};

/// Exact column order of the frame table.
pub const FRENET_HEADER: [&str; 26] = [
    "s", "x0", "x1", "x2", "x3", "T0", "T1", "T2", "T3", "N0", "N1", "N2", "N3", "B10", "B11", "B12", "B13", "B20",
    "B21", "B22", "B23", "kappa1", "kappa2", "kappa3", "eps", "ode_residual_max",
];

pub const CONSTRUCT_HEADER: [&str; 5] = ["t", "x0", "x1", "x2", "x3"];

pub const SYNTHESIS_HEADER: [&str; 21] = [
    "s", "x0", "x1", "x2", "x3", "T0", "T1", "T2", "T3", "N0", "N1", "N2", "N3", "B10", "B11", "B12", "B13", "B20",
    "B21", "B22", "B23",
];

/// Step of the central difference behind `ode_residual_max`.
pub const ODE_STEP: f64 = 1e-4;

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

/// Where a command's data goes; summary lines always reach stdout.
pub struct Sink<'a> {
    pub stdout: &'a mut dyn Write,
    pub path: Option<PathBuf>,
    pub format: Format,
}

impl Sink<'_> {
    /// Writes the data with `write`, then the summary `notes`: as trailing
    /// `#` comments for CSV, and echoed to stdout when the data went to a file.
    fn emit(
        &mut self,
        notes: &[String],
        write: impl FnOnce(&mut dyn Write, Format, &[String]) -> CliResult<()>,
    ) -> CliResult<()> {
        match &self.path {
            Some(path) => {
                let file = File::create(path)
                    .map_err(|e| CliError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
                let mut w = BufWriter::new(file);
                write(&mut w, self.format, notes)?;
                w.flush()?;
                for n in notes {
                    writeln!(self.stdout, "{n}")?;
                }
            }
            None => write(self.stdout, self.format, notes)?,
        }
        Ok(())
    }
}

fn write_csv<'r>(
    w: &mut dyn Write,
    header: &[&str],
    rows: impl Iterator<Item = &'r [f64]>,
    notes: &[String],
) -> CliResult<()> {
    let mut wtr = csv::Writer::from_writer(&mut *w);
    wtr.write_record(header)?;
    for row in rows {
        wtr.write_record(row.iter().map(|v| fmt_f64(*v)))?;
    }
    wtr.flush()?;
    drop(wtr);
    for n in notes {
        writeln!(w, "# {n}")?;
    }
    Ok(())
}

fn write_json(w: &mut dyn Write, value: &impl Serialize) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *w, value).map_err(|e| CliError::Io(e.into()))?;
    writeln!(w)?;
    Ok(())
}

fn frame_columns(pos: Vec4, frame: &curvelab::Frame, row: &mut Vec<f64>) {
    for v in [pos, frame.t, frame.n, frame.b1, frame.b2] {
        row.extend(v.to_array());
    }
}

/// Causal character of `α'(t)` at each `t`; stops at the first failure.
pub fn classify(spec: &CurveSpec, ts: &[f64], out: &mut dyn Write) -> CliResult<Status> {
    for &t in ts {
        let v = eval_curve(spec, t)?.derivative(1);
        let c: CausalCharacter = causal_character(v, CAUSAL_TOL);
        writeln!(out, "t={} {c}", fmt_f64(t))?;
    }
    Ok(Status::Pass)
}

/// One row of the frame table.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FrenetRow {
    #[serde(flatten)]
    pub data: FrenetData,
    /// Largest row of the Frenet-system residual; NaN where a neighbouring
    /// frame is undefined.
    pub ode_residual_max: f64,
}

impl FrenetRow {
    pub fn columns(&self) -> Vec<f64> {
        let d = &self.data;
        let mut row = vec![d.s];
        frame_columns(d.position, &d.frame, &mut row);
        row.extend([d.kappa1, d.kappa2, d.kappa3, d.eps, self.ode_residual_max]);
        row
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FrenetTable {
    pub rows: Vec<FrenetRow>,
    pub degenerate_samples: usize,
}

/// Frames at `n` cell-centred arclength samples. Degenerate samples are
/// counted rather than reported as errors.
pub fn frenet_table(spec: &CurveSpec, n: usize, opts: &FrenetOptions) -> CliResult<FrenetTable> {
    let map = arclength_map(spec)?;
    let samples = map.s_domain().cell_centres(n);
    // Keep the difference stencil inside the arclength range.
    let h = ODE_STEP.min(0.25 * map.length() / n as f64);
    let mut table = FrenetTable { rows: Vec::with_capacity(n), degenerate_samples: 0 };
    for s in samples {
        let data = match frenet_apparatus_with(&map, s, opts) {
            Ok(d) => d,
            Err(Error::DegenerateFrame { .. }) => {
                table.degenerate_samples += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let ode_residual_max = match frenet_ode_residual(&map, s, h, opts) {
            Ok(r) => r.into_iter().fold(0.0, f64::max),
            Err(Error::DegenerateFrame { .. } | Error::EpsilonChanges) => f64::NAN,
            Err(e) => return Err(e.into()),
        };
        table.rows.push(FrenetRow { data, ode_residual_max });
    }
    Ok(table)
}

pub fn write_frenet(table: &FrenetTable, w: &mut dyn Write, format: Format) -> CliResult<()> {
    match format {
        Format::Csv => {
            let rows: Vec<Vec<f64>> = table.rows.iter().map(FrenetRow::columns).collect();
            let note = format!("degenerate_samples={}", table.degenerate_samples);
            write_csv(w, &FRENET_HEADER, rows.iter().map(Vec::as_slice), &[note])
        }
        Format::Json => write_json(w, table),
    }
}

pub fn frenet(spec: &CurveSpec, n: usize, opts: &FrenetOptions, sink: &mut Sink) -> CliResult<Status> {
    let table = frenet_table(spec, n, opts)?;
    let notes = match sink.path {
        Some(_) => vec![format!("rows={} degenerate_samples={}", table.rows.len(), table.degenerate_samples)],
        None => vec![],
    };
    sink.emit(&notes, |w, format, _| write_frenet(&table, w, format))?;
    Ok(Status::Pass)
}

pub fn rectify_report(spec: &CurveSpec, n: usize, tol: &Tolerances) -> CliResult<RectifyingReport> {
    let map = arclength_map(spec)?;
    let samples = map.s_domain().cell_centres(n);
    Ok(rectifying_report(&map, &samples, tol, &FrenetOptions::default())?)
}

pub fn rectify_check(spec: &CurveSpec, n: usize, tol: &Tolerances, sink: &mut Sink) -> CliResult<Status> {
    if sink.format != Format::Json {
        return Err(CliError::usage("rectify-check emits JSON only"));
    }
    let report = rectify_report(spec, n, tol)?;
    let notes = match sink.path {
        Some(_) => vec![format!("verdict={}", report.verdict)],
        None => vec![],
    };
    sink.emit(&notes, |w, _, _| write_json(w, &report))?;
    Ok(Status::from_pass(report.verdict))
}

/// Writes `curve` as a run configuration usable with `--config`.
pub fn register(curve: &CurveConfig, path: &Path) -> CliResult<()> {
    let cfg = RunConfig { curve: Some(curve.clone()), ..Default::default() };
    let text = serde_json::to_string_pretty(&cfg).map_err(|e| CliError::Io(e.into()))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

#[derive(Serialize)]
struct PositionRow {
    t: f64,
    position: Vec4,
}

#[derive(Serialize)]
struct ConstructOutput<'a> {
    id: &'a str,
    curve: &'a CurveConfig,
    rows: Vec<PositionRow>,
}

/// Positions of the constructed curve at `ts`, or at `n` cell centres of
/// its domain when `ts` is empty.
pub fn construct(
    recipe: ConstructionRecipe,
    ts: &[f64],
    n: usize,
    registry: Option<&Path>,
    sink: &mut Sink,
) -> CliResult<Status> {
    let spec = recipe.build()?;
    let ts = if ts.is_empty() { spec.domain().cell_centres(n) } else { ts.to_vec() };
    let rows = ts
        .iter()
        .map(|&t| Ok(PositionRow { t, position: eval_curve(&spec, t)?.position() }))
        .collect::<CliResult<Vec<_>>>()?;
    let curve = CurveConfig { construction: Some(Box::new(recipe)), ..CurveConfig::catalog(GENERIC_ID) };
    let mut notes = vec![format!("id={GENERIC_ID}")];
    if let Some(path) = registry {
        register(&curve, path)?;
        notes.push(format!("config={}", path.display()));
    }
    sink.emit(&notes, |w, format, notes| match format {
        Format::Csv => {
            let table: Vec<Vec<f64>> = rows.iter().map(|r| [&[r.t][..], &r.position.to_array()].concat()).collect();
            write_csv(w, &CONSTRUCT_HEADER, table.iter().map(Vec::as_slice), notes)
        }
        Format::Json => write_json(w, &ConstructOutput { id: GENERIC_ID, curve: &curve, rows }),
    })?;
    Ok(Status::Pass)
}

#[derive(Serialize)]
struct SynthesisNode {
    s: f64,
    position: Vec4,
    frame: curvelab::Frame,
}

#[derive(Serialize)]
struct SynthesisOutput<'a> {
    id: &'a str,
    curve: &'a CurveConfig,
    max_drift: f64,
    /// `(s, drift)` of the rejected step when the drift bound was exceeded.
    failure: Option<(f64, f64)>,
    nodes: Vec<SynthesisNode>,
}

/// Integrates the profile and writes every accepted node. A drift overrun
/// still writes the nodes reached and fails the command.
pub fn synthesize(config: SynthesisConfig, registry: Option<&Path>, sink: &mut Sink, err: &mut dyn Write) -> CliResult<Status> {
    let profile = config.profile.build()?;
    let frame = config.frame.unwrap_or_else(|| curvelab::Frame::standard(profile.eps));
    let syn = Synthesis::run(&profile, &frame, config.start(), &config.options())?;
    let curve = CurveConfig { synthesis: Some(config), ..CurveConfig::catalog(GENERIC_ID) };

    let mut notes = vec![format!("max_drift={}", fmt_f64(syn.max_drift()))];
    if let Some((s, drift)) = syn.failure() {
        let e = Error::FrameDriftExceeded { s, drift };
        writeln!(err, "error: {e}")?;
        notes.push(format!("failed: {e}"));
    } else {
        notes.push(format!("id={GENERIC_ID}"));
        if let Some(path) = registry {
            register(&curve, path)?;
            notes.push(format!("config={}", path.display()));
        }
    }
    sink.emit(&notes, |w, format, notes| match format {
        Format::Csv => {
            let rows: Vec<Vec<f64>> = syn
                .nodes()
                .map(|(s, pos, frame)| {
                    let mut row = vec![s];
                    frame_columns(pos, &frame, &mut row);
                    row
                })
                .collect();
            write_csv(w, &SYNTHESIS_HEADER, rows.iter().map(Vec::as_slice), notes)
        }
        Format::Json => {
            let nodes = syn.nodes().map(|(s, position, frame)| SynthesisNode { s, position, frame }).collect();
            let out = SynthesisOutput {
                id: GENERIC_ID,
                curve: &curve,
                max_drift: syn.max_drift(),
                failure: syn.failure(),
                nodes,
            };
            write_json(w, &out)
        }
    })?;
    Ok(Status::from_pass(syn.failure().is_none()))
}
