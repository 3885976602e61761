mod common;

use std::fs::File;
use std::io::Write;
use std::os::fd::AsFd;
use std::time::{Duration, Instant};

use geoaffine_core::affine::{
    check_affine_formula, check_gradient_field, check_transport_commutation, counterexample_suite,
    halfplane, AffineProbe,
};
use geoaffine_core::convexity::{
    reference_chord, threshold_experiment, triangle_suite, ScanConfig, ScanVerdict,
};
use geoaffine_core::linalg::dist_inf;
use geoaffine_core::poincare::{
    connection_apply, curl_oneform, gradient_hp, transport_rk4, VectorField2,
};
use geoaffine_core::sampling::{default_radius, point_in_ball, stream, tangent_in_ball, Sampler};
use geoaffine_core::{tol, Point, SpaceSpec, Verdict};

const SEED: u64 = tol::DEFAULT_SEED;

fn report(n: usize, ok: bool, detail: String) {
    let line = format!(
        "criterion {n}: {} {detail}\n",
        if ok { "PASS" } else { "FAIL" }
    );
    // Written to a cloned descriptor so the line shows even when test output is captured.
    let fd = std::io::stderr().as_fd().try_clone_to_owned().unwrap();
    File::from(fd).write_all(line.as_bytes()).unwrap();
    assert!(ok, "criterion {n} failed: {detail}");
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

fn hp(t1: f64, t2: f64) -> Point {
    SpaceSpec::half_plane().point(vec![t1, t2]).unwrap()
}

fn z() -> Point {
    hp(2.0, 1.0)
}

#[test]
fn criterion_01_counterexample_constants() {
    let start = Instant::now();
    let probe = AffineProbe::standard_halfplane();
    let s5 = 5f64.sqrt();
    let expected_end = -((2.0 / s5).atanh() - (1.0 / s5).atanh()) / s5;
    let expected_mid = (1.0 / 2f64.sqrt()).ln();
    let (p, q) = reference_chord();
    let fp = probe.f0_value(&p);
    let fq = probe.f0_value(&q);
    let fm = probe.f0_value(&hp(0.0, 1.0 / 2f64.sqrt()));
    let suite_ok = counterexample_suite().passed;
    let elapsed = start.elapsed();
    let ok = (fp - expected_end).abs() < 1e-9
        && (fq - expected_end).abs() < 1e-9
        && (expected_end - (-0.4304)).abs() < 1e-4
        && (fm - expected_mid).abs() < 1e-12
        && (expected_mid - (-0.3465)).abs() < 1e-4
        && suite_ok
        && within(elapsed, 1.0);
    report(
        1,
        ok,
        format!("f0(p)={fp:.12} f0(q)={fq:.12} f0(mid)={fm:.12} suite={suite_ok} time={elapsed:?}"),
    );
}

#[test]
fn criterion_02_gradient_mismatch() {
    let probe = AffineProbe::standard_halfplane();
    let k = 2f64.sqrt() / 8.0 * (3.0 + 2.0 * 2f64.sqrt()).ln();
    let expected = [k + 0.5, k - 0.5];
    let analytic = gradient_hp(&halfplane::f0_field(), &z()).unwrap();
    let fd = probe
        .space
        .gradient_fd(|p| probe.f0_value(p), &z(), tol::GRADIENT_STEP)
        .unwrap();
    let closed = probe.transport_field(&z()).unwrap();
    let rk4 = transport_rk4(&probe.x0, &z(), [0.0, 1.0], tol::RK4_STEPS).unwrap();
    let e_an = dist_inf(&analytic.comps, &expected);
    let e_fd = dist_inf(&fd.comps, &expected);
    let e_cl = dist_inf(&closed.comps, &[1.0, 0.0]);
    let e_rk = dist_inf(&rk4, &[1.0, 0.0]);
    let gap = dist_inf(&analytic.comps, &closed.comps);
    let ok = e_an < 1e-9 && e_fd < 1e-5 && e_cl < 1e-9 && e_rk < 1e-9 && gap > 0.1;
    report(
        2,
        ok,
        format!("grad err analytic={e_an:.2e} fd={e_fd:.2e}; X0 err closed={e_cl:.2e} rk4={e_rk:.2e}; gap={gap:.6}"),
    );
}

#[test]
fn criterion_03_covariant_derivative() {
    let probe = AffineProbe::standard_halfplane();
    let space = probe.space;
    let expected = [0.0, 0.5];
    let analytic =
        connection_apply(&halfplane::x0_field(), &VectorField2::coordinate(0), &z()).unwrap();
    let d1 = space.tangent(&z(), vec![1.0, 0.0]).unwrap();
    let fd = space
        .covariant_derivative_fd(|p| probe.transport_field(p), &z(), &d1, 1e-4)
        .unwrap();
    let e_an = dist_inf(&analytic.comps, &expected);
    let e_fd = dist_inf(&fd.comps, &expected);
    report(
        3,
        e_an < 1e-9 && e_fd < 1e-5,
        format!("analytic err={e_an:.2e} fd err={e_fd:.2e}"),
    );
}

#[test]
fn criterion_04_curl_obstruction() {
    let curl = curl_oneform(&halfplane::x0_field(), &z()).unwrap();
    let pool = common::function_pool();
    let mut rng = stream(SEED, 4);
    let space = SpaceSpec::half_plane();
    let points: Vec<Point> = (0..100)
        .map(|_| point_in_ball(&mut rng, &space, &space.origin(), 2.0))
        .collect();
    let mut worst = 0.0f64;
    for (_, f) in &pool {
        for x in &points {
            let f2 = f.clone();
            let grad = move |t1: f64, t2: f64| {
                let d = f2.partials(t1, t2);
                [t2 * t2 * d[0], t2 * t2 * d[1]]
            };
            let g2 = grad.clone();
            let field = VectorField2::with_jacobian(grad, move |t1, t2| {
                common::fd_jacobian(&g2, t1, t2, 1e-5 * t2)
            });
            let g = gradient_hp(f, x).unwrap();
            assert!(dist_inf(&g.comps, &field.eval(x.coords[0], x.coords[1])) < 1e-12);
            worst = worst.max(curl_oneform(&field, x).unwrap().abs());
        }
    }
    let ok = (curl - 0.5).abs() < 1e-9 && worst < 1e-6 && pool.len() == 10;
    report(
        4,
        ok,
        format!(
            "curl X0(2,1)={curl:.12}; max |curl grad g|={worst:.2e} over {}x100",
            pool.len()
        ),
    );
}

fn roundtrip_and_isometry(space: &SpaceSpec, n: usize) -> (f64, f64) {
    let o = space.origin();
    let r = default_radius(space);
    let mut rt = 0.0f64;
    let mut iso = 0.0f64;
    for i in 0..n as u64 {
        let mut rng = stream(SEED, i);
        let x = point_in_ball(&mut rng, space, &o, r);
        let v = tangent_in_ball(&mut rng, space, &x, r);
        let y = space.exp_map(&x, &v).unwrap();
        let back = space.log_map(&x, &y).unwrap();
        let diff = space
            .project_tangent(&x, geoaffine_core::linalg::sub(&back.comps, &v.comps))
            .unwrap();
        rt = rt.max(space.norm(&diff));
        let w = tangent_in_ball(&mut rng, space, &x, 1.0);
        let moved = space.transport_to(&w, &y).unwrap();
        iso = iso.max((space.norm(&moved) - space.norm(&w)).abs());
    }
    (rt, iso)
}

#[test]
fn criterion_05_exp_log_and_transport() {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for space in common::spaces() {
        let (rt, iso) = roundtrip_and_isometry(&space, 1000);
        ok &= rt < 1e-9 && iso < 1e-10;
        parts.push(format!("{space}: rt={rt:.1e} iso={iso:.1e}"));
    }
    let elapsed = start.elapsed();
    ok &= within(elapsed, 10.0);
    report(5, ok, format!("{}; time={elapsed:?}", parts.join(", ")));
}

#[test]
fn criterion_06_tangent_decomposition() {
    let sphere = triangle_suite(&SpaceSpec::sphere(2, 1.0).unwrap(), 1000, SEED).unwrap();
    let half = triangle_suite(&SpaceSpec::half_plane(), 1000, SEED).unwrap();
    let flat = triangle_suite(&SpaceSpec::euclidean(2).unwrap(), 1000, SEED).unwrap();
    let positive = |s: &geoaffine_core::convexity::TriangleSuiteStats| {
        s.min_a_t > 0.0 && s.min_b_t > 0.0 && s.max_span_residual < 1e-8
    };
    let ok = positive(&sphere)
        && positive(&half)
        && positive(&flat)
        && sphere.min_ab_sum >= 1.0 - 1e-9
        && half.max_ab_sum <= 1.0 + 1e-9
        && (flat.min_ab_sum - 1.0).abs() <= 1e-10
        && (flat.max_ab_sum - 1.0).abs() <= 1e-10;
    report(
        6,
        ok,
        format!(
            "sphere a+b>={:.6}, halfplane a+b<={:.6}, flat a+b in [{:.12}, {:.12}], max span residual {:.1e}",
            sphere.min_ab_sum,
            half.max_ab_sum,
            flat.min_ab_sum,
            flat.max_ab_sum,
            sphere.max_span_residual.max(half.max_span_residual).max(flat.max_span_residual)
        ),
    );
}

#[test]
fn criterion_07_comparison_inequalities() {
    let mut ok = true;
    let mut parts = Vec::new();
    for space in [
        SpaceSpec::sphere(2, 1.0).unwrap(),
        SpaceSpec::half_plane(),
        SpaceSpec::hyperbolic(2, -1.0).unwrap(),
    ] {
        let s = triangle_suite(&space, 1000, SEED).unwrap();
        ok &= s.min_cosine_margin > 1e-10 && s.min_comparison_slack >= -1e-12;
        parts.push(format!(
            "{space}: cosine margin {:.2e}, comparison slack {:.2e}",
            s.min_cosine_margin, s.min_comparison_slack
        ));
    }
    report(7, ok, parts.join(", "));
}

const SPHERE_GRID: [f64; 7] = [-0.5, -0.1, 0.2, 0.8, 1.5, 1.6, 2.0];

fn sphere_sweep() -> Vec<geoaffine_core::ConvexityReport> {
    let probe = AffineProbe::unit_at_origin(SpaceSpec::sphere(2, 1.0).unwrap());
    let cfg = ScanConfig {
        n_pairs: 5000,
        n_steps: 64,
        seed: SEED,
        inject_construction: true,
        ..ScanConfig::default()
    };
    threshold_experiment(&probe, &SPHERE_GRID, &cfg).unwrap()
}

#[test]
fn criterion_08_sphere_thresholds() {
    let start = Instant::now();
    let reports = sphere_sweep();
    let elapsed = start.elapsed();
    let found: Vec<f64> = reports
        .iter()
        .filter(|r| r.verdict == ScanVerdict::WitnessFound)
        .map(|r| r.c)
        .collect();
    let witnesses_valid = reports.iter().all(|r| match &r.witness {
        Some(w) => w.f0_at_t > r.c + tol::WITNESS_MARGIN,
        None => true,
    });
    let ok = found == [0.2, 0.8, 1.5] && witnesses_valid && within(elapsed, 60.0);
    report(8, ok, format!("witnesses at c={found:?}; time={elapsed:?}"));
}

fn halfplane_sweep() -> Vec<geoaffine_core::ConvexityReport> {
    let (p, q) = reference_chord();
    let cfg = ScanConfig {
        seed: SEED,
        injected: vec![(p, q)],
        certificate: true,
        ..ScanConfig::default()
    };
    threshold_experiment(
        &AffineProbe::standard_halfplane(),
        &[-0.4, 0.0, 0.5, 2.0],
        &cfg,
    )
    .unwrap()
}

#[test]
fn criterion_09_halfplane_thresholds() {
    let reports = halfplane_sweep();
    let first = &reports[0];
    let chord = first.witness.as_ref().is_some_and(|w| {
        w.injected
            && w.p.approx_eq(&hp(0.5, 0.5), 1e-15)
            && w.q.approx_eq(&hp(-0.5, 0.5), 1e-15)
            && (w.t - 0.5).abs() < 1e-6
            && (w.f0_at_t - (1.0 / 2f64.sqrt()).ln()).abs() < 1e-9
    });
    let rest_convex = reports[1..]
        .iter()
        .all(|r| r.verdict == ScanVerdict::NoWitnessAtBudget);
    let certificates = reports.iter().all(|r| {
        let cert = r.certificate.as_ref().unwrap();
        cert.holds() && cert.max_identity_residual < 1e-8 && cert.evaluations > 0
    });
    let bound_used = reports[1..]
        .iter()
        .all(|r| r.certificate.as_ref().unwrap().bound_applied > 0);
    let ok = first.verdict == ScanVerdict::WitnessFound
        && chord
        && rest_convex
        && certificates
        && bound_used;
    let residual = reports
        .iter()
        .map(|r| r.certificate.as_ref().unwrap().max_identity_residual)
        .fold(0.0, f64::max);
    report(
        9,
        ok,
        format!(
            "c=-0.4 chord={chord}; c in {{0,0.5,2}} convex={rest_convex}; certificates hold={certificates} (max identity residual {residual:.1e}, bound applied={bound_used})"
        ),
    );
}

#[test]
fn criterion_10_flat_converse() {
    let mut worst = 0.0f64;
    let mut all_hold = true;
    for dim in [2, 5] {
        let space = SpaceSpec::euclidean(dim).unwrap();
        for i in 0..10u64 {
            let mut rng = stream(SEED, 1000 + i);
            let x0 = point_in_ball(&mut rng, &space, &space.origin(), 3.0);
            let u0 = tangent_in_ball(&mut rng, &space, &x0, 3.0);
            let probe = AffineProbe::new(space, x0.clone(), u0).unwrap();
            let sampler = Sampler::default_ball(x0.clone(), SEED + i);
            let reports = [
                check_transport_commutation(&probe, &sampler, 100, 1e-10),
                check_gradient_field(&probe, &sampler, 100, 1e-10),
                check_affine_formula(&space, |p| probe.f0_value(p), &x0, &sampler, 100, 1e-10)
                    .unwrap(),
            ];
            for r in &reports {
                all_hold &= r.verdict == Verdict::Holds;
                worst = worst.max(r.max_residual);
            }
        }
    }
    let mut curved = Vec::new();
    for space in [SpaceSpec::half_plane(), SpaceSpec::sphere(2, 1.0).unwrap()] {
        let probe = AffineProbe::unit_at_origin(space);
        let sampler = Sampler::default_ball(probe.x0.clone(), SEED);
        let t = check_transport_commutation(&probe, &sampler, 100, 1e-6);
        let g = check_gradient_field(&probe, &sampler, 100, 1e-6);
        curved.push(t.verdict == Verdict::Violated && g.verdict == Verdict::Violated);
    }
    let ok = all_hold && worst < 1e-10 && curved.iter().all(|&v| v);
    report(
        10,
        ok,
        format!("flat max residual {worst:.1e} (all hold={all_hold}); curved violated={curved:?}"),
    );
}

#[test]
fn criterion_11_determinism() {
    let run = || -> Vec<String> {
        let probe = AffineProbe::standard_halfplane();
        let sampler = Sampler::default_ball(probe.x0.clone(), SEED);
        vec![
            serde_json::to_string(&counterexample_suite()).unwrap(),
            serde_json::to_string(&halfplane_sweep()).unwrap(),
            serde_json::to_string(&sphere_sweep()).unwrap(),
            serde_json::to_string(
                &triangle_suite(&SpaceSpec::sphere(2, 1.0).unwrap(), 1000, SEED).unwrap(),
            )
            .unwrap(),
            serde_json::to_string(&check_transport_commutation(&probe, &sampler, 200, 1e-6))
                .unwrap(),
        ]
    };
    let dir = std::env::temp_dir().join(format!("geoaffine-determinism-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut identical = true;
    for (i, (a, b)) in run().into_iter().zip(run()).enumerate() {
        let (fa, fb) = (
            dir.join(format!("{i}-a.json")),
            dir.join(format!("{i}-b.json")),
        );
        std::fs::write(&fa, a).unwrap();
        std::fs::write(&fb, b).unwrap();
        identical &= std::fs::read(&fa).unwrap() == std::fs::read(&fb).unwrap();
    }
    std::fs::remove_dir_all(&dir).unwrap();
    report(
        11,
        identical,
        "five report files identical across reruns".to_string(),
    );
}
