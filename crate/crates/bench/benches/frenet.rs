use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use curvelab::reference::{rectifying_profile, synthesized_rectifying, unit_helix};
use curvelab::{
    arclength_map, frenet_apparatus, rectifying_report, FrenetOptions, SynthesisOptions, Tolerances,
};
use curvelab_bench::{constructed_map, helix_map, samples};

fn frame_extraction(c: &mut Criterion) {
    let helix = helix_map();
    let constructed = constructed_map();
    let (sh, sc) = (samples(&helix, 64), samples(&constructed, 64));
    c.bench_function("frenet_apparatus/helix x64", |b| {
        b.iter(|| sh.iter().map(|&s| frenet_apparatus(&helix, black_box(s)).unwrap().kappa1).sum::<f64>())
    });
    c.bench_function("frenet_apparatus/constructed x64", |b| {
        b.iter(|| sc.iter().map(|&s| frenet_apparatus(&constructed, black_box(s)).unwrap().kappa1).sum::<f64>())
    });
}

fn reparameterization(c: &mut Criterion) {
    let spec = unit_helix();
    c.bench_function("arclength_map/helix build", |b| b.iter(|| arclength_map(black_box(&spec)).unwrap()));
    let map = helix_map();
    let len = map.length();
    c.bench_function("arclength_map/helix invert", |b| b.iter(|| map.t_of_s(black_box(0.37 * len)).unwrap()));
}

fn synthesis(c: &mut Criterion) {
    let mut g = c.benchmark_group("synthesis");
    g.sample_size(20);
    let range = rectifying_profile().s_range;
    g.bench_function(format!("rectifying profile, {:?}, ds=1e-3", range), |b| {
        b.iter(|| synthesized_rectifying(black_box(&SynthesisOptions::new(1e-3))).unwrap().max_drift())
    });
    g.finish();
}

fn report(c: &mut Criterion) {
    let mut g = c.benchmark_group("rectifying_report");
    g.sample_size(20);
    let map = constructed_map();
    let ss = samples(&map, 50);
    g.bench_function("constructed, 50 samples", |b| {
        b.iter(|| rectifying_report(&map, black_box(&ss), &Tolerances::default(), &FrenetOptions::default()).unwrap().verdict)
    });
    g.finish();
}

criterion_group!(benches, frame_extraction, reparameterization, synthesis, report);
criterion_main!(benches);
