use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use geoaffine_core::affine::AffineProbe;
use geoaffine_core::convexity::{convexity_scan_with, triangle_suite, ScanConfig};
use geoaffine_core::{tol, SpaceSpec};

fn scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    let cfg = ScanConfig {
        n_pairs: 200,
        ..ScanConfig::default()
    };
    let hp = AffineProbe::standard_halfplane();
    group.bench_function("halfplane/c=0.5", |b| {
        b.iter(|| convexity_scan_with(&hp, black_box(0.5), &cfg))
    });
    let sphere = AffineProbe::unit_at_origin(SpaceSpec::sphere(2, 1.0).unwrap());
    let injected = ScanConfig {
        inject_construction: true,
        ..cfg.clone()
    };
    group.bench_function("sphere/c=0.8", |b| {
        b.iter(|| convexity_scan_with(&sphere, black_box(0.8), &injected))
    });
    group.bench_function("triangles/sphere/200", |b| {
        b.iter(|| {
            triangle_suite(
                &SpaceSpec::sphere(2, 1.0).unwrap(),
                black_box(200),
                tol::DEFAULT_SEED,
            )
        })
    });
    group.finish();
}

criterion_group!(benches, scans);
criterion_main!(benches);
