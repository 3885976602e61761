use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use geoaffine_core::affine::{halfplane, AffineProbe};
use geoaffine_core::poincare::{curl_oneform, transport_rk4};
use geoaffine_core::sampling::{default_radius, point_in_ball, stream, tangent_in_ball};
use geoaffine_core::{tol, SpaceSpec};

fn exp_log(c: &mut Criterion) {
    for space in [
        SpaceSpec::sphere(3, 1.0).unwrap(),
        SpaceSpec::hyperbolic(3, -1.0).unwrap(),
        SpaceSpec::half_plane(),
    ] {
        let mut rng = stream(tol::DEFAULT_SEED, 0);
        let x = point_in_ball(&mut rng, &space, &space.origin(), default_radius(&space));
        let v = tangent_in_ball(&mut rng, &space, &x, default_radius(&space));
        let y = space.exp_map(&x, &v).unwrap();
        c.bench_function(&format!("exp/{space}"), |b| {
            b.iter(|| space.exp_map(black_box(&x), black_box(&v)))
        });
        c.bench_function(&format!("log/{space}"), |b| {
            b.iter(|| space.log_map(black_box(&x), black_box(&y)))
        });
        c.bench_function(&format!("transport/{space}"), |b| {
            b.iter(|| space.transport_to(black_box(&v), black_box(&y)))
        });
    }
}

fn halfplane_fields(c: &mut Criterion) {
    let probe = AffineProbe::standard_halfplane();
    let z = probe.space.point(vec![2.0, 1.0]).unwrap();
    c.bench_function("f0/closed_form", |b| {
        b.iter(|| halfplane::f0_closed_form_hp(black_box(&z)))
    });
    c.bench_function("f0/log_route", |b| b.iter(|| probe.f0_value(black_box(&z))));
    c.bench_function("gradient_fd/halfplane", |b| {
        b.iter(|| {
            probe
                .space
                .gradient_fd(|p| probe.f0_value(p), black_box(&z), tol::GRADIENT_STEP)
        })
    });
    let field = halfplane::x0_field();
    c.bench_function("curl/x0", |b| {
        b.iter(|| curl_oneform(&field, black_box(&z)))
    });
    c.bench_function("transport_rk4/1024", |b| {
        b.iter(|| transport_rk4(&probe.x0, black_box(&z), [0.0, 1.0], tol::RK4_STEPS))
    });
}

criterion_group!(benches, exp_log, halfplane_fields);
criterion_main!(benches);
