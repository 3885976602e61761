#![allow(dead_code)]

use geoaffine_core::affine::halfplane::f0_field;
use geoaffine_core::poincare::ScalarField2;
use geoaffine_core::SpaceSpec;

/// One instance of each model space.
pub fn spaces() -> Vec<SpaceSpec> {
    vec![
        SpaceSpec::euclidean(3).unwrap(),
        SpaceSpec::sphere(2, 1.0).unwrap(),
        SpaceSpec::sphere(3, 2.5).unwrap(),
        SpaceSpec::hyperbolic(2, -1.0).unwrap(),
        SpaceSpec::hyperbolic(3, -0.5).unwrap(),
        SpaceSpec::half_plane(),
    ]
}

/// Smooth test functions on the half-plane with analytic partials.
pub fn function_pool() -> Vec<(&'static str, ScalarField2)> {
    vec![
        (
            "t1",
            ScalarField2::with_partials(|t1, _| t1, |_, _| [1.0, 0.0]),
        ),
        (
            "t2",
            ScalarField2::with_partials(|_, t2| t2, |_, _| [0.0, 1.0]),
        ),
        (
            "t1^2 + t2^2",
            ScalarField2::with_partials(|t1, t2| t1 * t1 + t2 * t2, |t1, t2| [2.0 * t1, 2.0 * t2]),
        ),
        (
            "sin(t1) t2",
            ScalarField2::with_partials(|t1, t2| t1.sin() * t2, |t1, t2| [t1.cos() * t2, t1.sin()]),
        ),
        (
            "exp(0.3 t1) / t2",
            ScalarField2::with_partials(
                |t1, t2| (0.3 * t1).exp() / t2,
                |t1, t2| [0.3 * (0.3 * t1).exp() / t2, -(0.3 * t1).exp() / (t2 * t2)],
            ),
        ),
        (
            "ln t2 + t1^3",
            ScalarField2::with_partials(
                |t1, t2| t2.ln() + t1.powi(3),
                |t1, t2| [3.0 * t1 * t1, 1.0 / t2],
            ),
        ),
        (
            "cos(t1 t2)",
            ScalarField2::with_partials(
                |t1, t2| (t1 * t2).cos(),
                |t1, t2| [-t2 * (t1 * t2).sin(), -t1 * (t1 * t2).sin()],
            ),
        ),
        (
            "t1 / (1 + t2^2)",
            ScalarField2::with_partials(
                |t1, t2| t1 / (1.0 + t2 * t2),
                |t1, t2| {
                    [
                        1.0 / (1.0 + t2 * t2),
                        -2.0 * t1 * t2 / (1.0 + t2 * t2).powi(2),
                    ]
                },
            ),
        ),
        (
            "sqrt(1 + t1^2 + t2^2)",
            ScalarField2::with_partials(
                |t1, t2| (1.0 + t1 * t1 + t2 * t2).sqrt(),
                |t1, t2| {
                    let r = (1.0 + t1 * t1 + t2 * t2).sqrt();
                    [t1 / r, t2 / r]
                },
            ),
        ),
        ("f0", f0_field()),
    ]
}

/// Central-difference Jacobian `[dX^k/dt_j]` of a coordinate map.
pub fn fd_jacobian<F: Fn(f64, f64) -> [f64; 2]>(f: F, t1: f64, t2: f64, h: f64) -> [[f64; 2]; 2] {
    let (p1, m1) = (f(t1 + h, t2), f(t1 - h, t2));
    let (p2, m2) = (f(t1, t2 + h), f(t1, t2 - h));
    let d = 0.5 / h;
    [
        [(p1[0] - m1[0]) * d, (p2[0] - m2[0]) * d],
        [(p1[1] - m1[1]) * d, (p2[1] - m2[1]) * d],
    ]
}
