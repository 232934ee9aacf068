//! Acceptance criteria, each at its stated tolerance, printed as one
//! PASS/FAIL line apiece. Computed directly from the library and the binary,
//! independently of the `verify` suites.

mod common;

use std::process::ExitCode;

use common::{checked_report, curvelab, Csv};
use curvelab::frenet::frenet_apparatus_with;
use curvelab::jets::CATALOG_IDS;
use curvelab::rectifying::FitSamples;
use curvelab::reference::{constructed_clelia, rectifying_profile, unit_helix, SYNTHESIS_START};
use curvelab::{
    arclength_map, catalog_spec, constant_vector_x, eval_curve, fit_curvature_relation, frenet_ode_residual,
    synthesize_curve, ArclengthMap, CatalogCurve, CurveSpec, Error, Frame, FrenetData, FrenetOptions,
    FrenetSystem, SynthesisOptions, Vec4,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<(bool, String), Box<dyn std::error::Error>>;

fn opts(system: FrenetSystem) -> FrenetOptions {
    FrenetOptions { system, ..Default::default() }
}

fn frames(m: &ArclengthMap, n: usize, o: &FrenetOptions) -> Result<Vec<FrenetData>, Error> {
    m.s_domain().cell_centres(n).into_iter().map(|s| frenet_apparatus_with(m, s, o)).collect()
}

fn spread(v: impl Iterator<Item = f64>) -> f64 {
    let (lo, hi) = v.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), x| (l.min(x), h.max(x)));
    hi - lo
}

/// 1. Ten Gram conditions within 1e-8 at 100 samples on every
/// non-degenerate catalog curve; ε is exactly the sign of g(B₁, B₁).
fn gram_conditions() -> Outcome {
    let mut worst = 0.0_f64;
    let mut eps_exact = true;
    let mut curves = Vec::new();
    for id in CATALOG_IDS {
        let m = arclength_map(&catalog_spec(id, &Default::default())?)?;
        let fs = match frames(&m, 100, &opts(FrenetSystem::STANDARD)) {
            Err(Error::DegenerateFrame { .. }) => continue,
            other => other?,
        };
        for f in fs {
            let v = f.frame.vectors();
            let target = [1.0, 1.0, f.eps, -f.eps];
            for i in 0..4 {
                for j in i..4 {
                    let want = if i == j { target[i] } else { 0.0 };
                    worst = worst.max((v[i].dot(v[j]) - want).abs());
                }
            }
            let g = f.frame.b1.dot(f.frame.b1);
            eps_exact &= f.eps == if g > 0.0 { 1.0 } else { -1.0 };
        }
        curves.push(id);
    }
    let pass = worst < 1e-8 && eps_exact && curves.len() >= 2;
    Ok((pass, format!("max deviation {worst:.1e} on {}; eps exact: {eps_exact}", curves.join(", "))))
}

fn worst_rows(m: &ArclengthMap, h: f64, o: &FrenetOptions) -> Result<[f64; 4], Error> {
    let mut worst = [0.0_f64; 4];
    for s in m.s_domain().cell_centres(12) {
        for (w, r) in worst.iter_mut().zip(frenet_ode_residual(m, s, h, o)?) {
            *w = w.max(r);
        }
    }
    Ok(worst)
}

/// 2. All four Frenet rows below 1e-7 at h = 1e-4, converging at second
/// order, on the helix and a constructed rectifying curve.
fn frenet_rows(system: FrenetSystem) -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for (name, spec) in [("helix", unit_helix()), ("constructed", constructed_clelia(10.0, 0.3)?)] {
        let m = arclength_map(&spec)?;
        let (coarse, fine) = (worst_rows(&m, 2e-4, &opts(system))?, worst_rows(&m, 1e-4, &opts(system))?);
        let max = fine.iter().cloned().fold(0.0, f64::max);
        let orders: Vec<f64> = (0..4).map(|i| (coarse[i] / fine[i]).log2()).collect();
        pass &= max < 1e-7 && orders.iter().all(|p| (p - 2.0).abs() < 0.2);
        notes.push(format!("{name} max {max:.1e}, orders {:.2}..{:.2}", orders.iter().cloned().fold(f64::INFINITY, f64::min), orders.iter().cloned().fold(0.0, f64::max)));
    }
    Ok((pass, notes.join("; ")))
}

fn constructed() -> Result<(CurveSpec, ArclengthMap), Error> {
    let spec = constructed_clelia(1.0, 0.3)?;
    let m = arclength_map(&spec)?;
    Ok((spec, m))
}

/// 3. The construction over the Clelia curve with a = 1, t0 = 0.3 has
/// |g(α, N)| < 1e-8 at 50 arclength samples.
fn construction() -> Outcome {
    let (_, m) = constructed()?;
    let worst = frames(&m, 50, &opts(FrenetSystem::STANDARD))?
        .iter()
        .map(|f| f.position.dot(f.frame.n).abs())
        .fold(0.0, f64::max);
    Ok((worst < 1e-8, format!("max |g(alpha, N)| {worst:.1e}")))
}

/// 4. Position checks on the constructed curve, from divided differences
/// of the sampled inner products and from the command-line report.
fn position_checks() -> Outcome {
    let (_, m) = constructed()?;
    let fs = frames(&m, 50, &opts(FrenetSystem::STANDARD))?;
    let s: Vec<f64> = fs.iter().map(|f| f.s).collect();
    let dist: Vec<f64> = fs.iter().map(|f| f.position.dot(f.position)).collect();
    let tang: Vec<f64> = fs.iter().map(|f| f.position.dot(f.frame.t)).collect();
    // Second divided differences of a quadratic equal its leading coefficient.
    let leading = (0..s.len() - 2)
        .map(|i| {
            let d1 = (dist[i + 1] - dist[i]) / (s[i + 1] - s[i]);
            let d2 = (dist[i + 2] - dist[i + 1]) / (s[i + 2] - s[i + 1]);
            ((d2 - d1) / (s[i + 2] - s[i]) - 1.0).abs()
        })
        .fold(0.0, f64::max);
    let slope = (0..s.len() - 1).map(|i| ((tang[i + 1] - tang[i]) / (s[i + 1] - s[i]) - 1.0).abs()).fold(0.0, f64::max);
    let normal = spread(dist.iter().zip(&tang).map(|(d, t)| d - t * t));
    let varies = spread(dist.iter().cloned()) > 1e-6;

    let r = curvelab(&["rectify-check", "--config", &constructed_config()?]);
    let report = checked_report(&r.stdout);
    let b = &report["thm33"]["binormal_components"];
    let binormal = b["b1_residual"].as_f64().unwrap().max(b["b2_residual"].as_f64().unwrap());
    let pass = leading < 1e-6 && slope < 1e-8 && normal < 1e-7 && varies && binormal < 1e-6 && r.code == 0;
    Ok((
        pass,
        format!(
            "|leading-1| {leading:.1e}, |slope-1| {slope:.1e}, normal spread {normal:.1e}, binormal {binormal:.1e}, exit {}",
            r.code
        ),
    ))
}

fn constructed_config() -> std::io::Result<String> {
    let path = std::env::temp_dir().join(format!("curvelab-acceptance-{}.json", std::process::id()));
    std::fs::write(
        &path,
        r#"{"curve":{"id":"generic_rectifying","construction":{"sphere":{"id":"hyperbolic_clelia","domain":[0.55,0.95]},"a":1,"t0":0.3}}}"#,
    )?;
    Ok(path.to_string_lossy().into_owned())
}

/// 5. Curvature relation in both directions: the fit on the constructed
/// curve, and the synthesized curve of κ₁ = cosh(s)/s, κ₂ = κ₃ = 1 made
/// rectifying by the constant vector X.
fn curvature_relation(system: FrenetSystem) -> Outcome {
    let o = opts(system);
    let (_, m) = constructed()?;
    let rms = fit_curvature_relation(&m, &m.s_domain().cell_centres(50), &o)?.rms_residual;

    let profile = rectifying_profile();
    let syn_opts = SynthesisOptions { system, ..SynthesisOptions::new(1e-3) };
    let syn = synthesize_curve(&profile, &Frame::standard(profile.eps), SYNTHESIS_START, &syn_opts)?;
    let m = arclength_map(&syn.spec()?)?;
    let ss = m.s_domain().cell_centres(50);
    let fit = fit_curvature_relation(&m, &ss, &o)?;
    let x0 = constant_vector_x(&m, ss[0], &fit, &o)?;
    let (mut drift, mut normal) = (0.0_f64, 0.0_f64);
    for &s in &ss {
        let f = frenet_apparatus_with(&m, s, &o)?;
        drift = drift.max((constant_vector_x(&m, s, &fit, &o)? - x0).euclid_norm());
        normal = normal.max((f.position - x0).dot(f.frame.n).abs());
    }
    let pass = rms < 1e-6 && drift < 1e-6 && normal < 1e-6;
    Ok((pass, format!("fit rms {rms:.1e}; synthesized: max |g(alpha - X, N)| {normal:.1e}, X drift {drift:.1e}")))
}

/// 6. The helix has constant curvatures, and neither any c on the grid nor
/// any origin on the coarse grid makes it rectifying.
fn helix_witness() -> Outcome {
    let m = arclength_map(&unit_helix())?;
    let fs = frames(&m, 50, &opts(FrenetSystem::STANDARD))?;
    let kappa_spread = (0..3).map(|i| spread(fs.iter().map(|f| f.kappas()[i]))).fold(0.0, f64::max);

    let data = FitSamples::collect(&m, &m.s_domain().cell_centres(50), &FrenetOptions::default())?;
    let mut min_rms = f64::INFINITY;
    for k in 0..=2000 {
        let c = -10.0 + 0.01 * k as f64;
        min_rms = min_rms.min(data.fit_fixed_c(c)?.rms_residual);
    }

    let axis: Vec<f64> = (0..=20).map(|k| -5.0 + 0.5 * k as f64).collect();
    let mut min_origin = f64::INFINITY;
    for &a in &axis {
        for &b in &axis {
            for &c in &axis {
                for &d in &axis {
                    let o = Vec4::new(a, b, c, d);
                    let worst = fs.iter().map(|f| (f.position - o).dot(f.frame.n).abs()).fold(0.0, f64::max);
                    min_origin = min_origin.min(worst);
                }
            }
        }
    }

    let r = curvelab(&["rectify-check", "--curve", "lorentz_helix"]);
    let cli_rms = checked_report(&r.stdout)["thm31"]["rms_residual"].as_f64().unwrap();
    let pass = kappa_spread < 1e-8 && min_rms > 1e-2 && min_origin > 1e-3 && r.code == 1 && cli_rms > 1e-2;
    Ok((
        pass,
        format!(
            "kappa spread {kappa_spread:.1e}; min fit rms {min_rms:.3}; min origin residual {min_origin:.3}; report exit {}",
            r.code
        ),
    ))
}

/// 7. The planar inverse-sine curve is degenerate at every sample, and the
/// frame table says so.
fn degeneracy() -> Outcome {
    let m = arclength_map(&CatalogCurve::InverseSineGeodesic { a: 1.0, s0: 0.0 }.spec())?;
    let every = m
        .s_domain()
        .cell_centres(100)
        .into_iter()
        .all(|s| matches!(frenet_apparatus_with(&m, s, &FrenetOptions::default()), Err(Error::DegenerateFrame { .. })));
    let r = curvelab(&["frenet", "--curve", "paper_example", "--samples", "100"]);
    let csv = Csv::parse(&r.stdout);
    let count = csv.comment("degenerate_samples");
    let pass = every && r.code == 0 && csv.rows.is_empty() && count.as_deref() == Some("100");
    Ok((pass, format!("DegenerateFrame everywhere: {every}; table rows {}, degenerate_samples={}", csv.rows.len(), count.unwrap_or_default())))
}

fn closed_form(id: &str, t: f64) -> [f64; 4] {
    match id {
        "paper_example" => {
            let r = 1.0 / t.sin();
            [r * t.cosh(), 0.0, r * t.sinh(), 0.0]
        }
        "hyperbolic_geodesic" => [t.cosh(), 0.0, t.sinh(), 0.0],
        "hyperbolic_clelia" => [t.cosh(), t.sinh() * t.cos(), t.sinh() * t.sin() * t.cos(), t.sinh() * t.sin().powi(2)],
        "lorentz_helix" => [t.sinh(), t.cosh(), 2f64.sqrt() * t.cos(), 2f64.sqrt() * t.sin()],
        _ => unreachable!(),
    }
}

/// Order-4 central difference of the `k`-th derivative.
fn central_difference(id: &str, t: f64, k: usize) -> Vec4 {
    let (w, h): (&[f64], f64) = match k {
        1 => (&[1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0], 1e-3),
        2 => (&[-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0], 3e-3),
        3 => (&[1.0 / 8.0, -1.0, 13.0 / 8.0, 0.0, -13.0 / 8.0, 1.0, -1.0 / 8.0], 5e-3),
        _ => (&[-1.0 / 6.0, 2.0, -13.0 / 2.0, 28.0 / 3.0, -13.0 / 2.0, 2.0, -1.0 / 6.0], 1e-2),
    };
    let half = (w.len() / 2) as f64;
    let mut acc = Vec4::ZERO;
    for (i, wi) in w.iter().enumerate() {
        acc += Vec4::from_array(closed_form(id, t + (i as f64 - half) * h)) * *wi;
    }
    acc / h.powi(k as i32)
}

/// 8. Jet derivatives against order-4 central differences, relative error
/// below 1e-6, on every catalog curve at 50 random points.
fn oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let mut worst = 0.0_f64;
    for id in CATALOG_IDS {
        let spec = catalog_spec(id, &Default::default())?;
        let d = spec.domain();
        for _ in 0..50 {
            let t = rng.random_range(d.lo..d.hi);
            let jet = eval_curve(&spec, t)?;
            for k in 1..=4 {
                let exact = jet.derivative(k);
                worst = worst.max((exact - central_difference(id, t, k)).euclid_norm() / exact.euclid_norm());
            }
        }
    }
    Ok((worst < 1e-6, format!("max relative error {worst:.1e}")))
}

/// 9. Flipping the sign of the −εκ₂ entry fails criteria 2 and 5.
fn mutation() -> Outcome {
    let failed = |o: Outcome| !matches!(o, Ok((true, _)));
    let two = failed(frenet_rows(FrenetSystem::MUTATED));
    let five = failed(curvature_relation(FrenetSystem::MUTATED));
    Ok((two && five, format!("criterion 2 fails: {two}; criterion 5 fails: {five}")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Gram conditions on catalog curves", gram_conditions),
        ("Frenet rows, second-order convergence", || frenet_rows(FrenetSystem::STANDARD)),
        ("construction is rectifying", construction),
        ("position checks on the construction", position_checks),
        ("curvature relation, both directions", || curvature_relation(FrenetSystem::STANDARD)),
        ("helix is not rectifying", helix_witness),
        ("planar curve is degenerate", degeneracy),
        ("jets match finite differences", oracle),
        ("sign flip is detected", mutation),
    ];
    let mut failures = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let (pass, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        failures += usize::from(!pass);
        println!("{} acceptance {}: {title} ({detail})", if pass { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
