//! The four failing assertions for `x0 = (0, 1)`, `u0 = (0, 1)` on the half-plane:
//! (i) `f0` is not quasi-convex, (ii) `grad f0 != X0`, (iii) `X0` is not
//! parallel, (iv) `X0` is not a gradient field.

use serde::Serialize;

use super::{halfplane, AffineProbe};
use crate::linalg::{artanh, dist_inf};
use crate::poincare::{connection_apply, curl_oneform, gradient_hp, VectorField2};
use crate::space::{Point, SpaceSpec};

/// Tolerances for the numeric comparisons of the suite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuiteTolerances {
    /// Closed-form and analytic-derivative values.
    pub analytic: f64,
    /// Gradients from finite differences.
    pub gradient_fd: f64,
    /// Covariant derivatives and curls from finite differences.
    pub connection_fd: f64,
    /// Step of the finite differences.
    pub fd_step: f64,
}

impl Default for SuiteTolerances {
    fn default() -> Self {
        SuiteTolerances {
            analytic: 1e-9,
            gradient_fd: 1e-5,
            connection_fd: 1e-6,
            fd_step: 1e-4,
        }
    }
}

/// How a numeric check is judged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Relation {
    /// `max |value - expected| <= tolerance`.
    Close { tolerance: f64 },
    /// `value < bound`.
    Below { bound: f64 },
    /// `value > bound`.
    Above { bound: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericCheck {
    pub label: String,
    pub value: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<f64>,
    pub relation: Relation,
    pub passed: bool,
}

impl NumericCheck {
    fn close(label: &str, value: Vec<f64>, expected: Vec<f64>, tolerance: f64) -> Self {
        let passed = value.len() == expected.len() && dist_inf(&value, &expected) <= tolerance;
        NumericCheck {
            label: label.to_string(),
            value,
            expected,
            relation: Relation::Close { tolerance },
            passed,
        }
    }

    fn below(label: &str, value: f64, bound: f64) -> Self {
        NumericCheck {
            label: label.to_string(),
            value: vec![value],
            expected: Vec::new(),
            relation: Relation::Below { bound },
            passed: value < bound,
        }
    }

    fn above(label: &str, value: f64, bound: f64) -> Self {
        NumericCheck {
            label: label.to_string(),
            value: vec![value],
            expected: Vec::new(),
            relation: Relation::Above { bound },
            passed: value > bound,
        }
    }

    fn failed(label: &str, err: &crate::GeoError) -> Self {
        NumericCheck {
            label: format!("{label}: {err}"),
            value: Vec::new(),
            expected: Vec::new(),
            relation: Relation::Close { tolerance: 0.0 },
            passed: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssertionResult {
    pub id: String,
    pub statement: String,
    pub checks: Vec<NumericCheck>,
    pub passed: bool,
}

impl AssertionResult {
    fn new(id: &str, statement: &str, checks: Vec<NumericCheck>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        AssertionResult {
            id: id.to_string(),
            statement: statement.to_string(),
            checks,
            passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleReport {
    pub probe: AffineProbe,
    pub tolerances: SuiteTolerances,
    pub assertions: Vec<AssertionResult>,
    pub passed: bool,
}

/// Sub-level threshold of assertion (i).
pub const LEVEL_C0: f64 = -0.4;

fn hp(t1: f64, t2: f64) -> Point {
    SpaceSpec::half_plane().raw_point(vec![t1, t2])
}

/// Runs the suite with the default tolerances.
pub fn counterexample_suite() -> CounterexampleReport {
    counterexample_suite_with(SuiteTolerances::default())
}

/// Runs the suite with explicit tolerances.
pub fn counterexample_suite_with(tol: SuiteTolerances) -> CounterexampleReport {
    let probe = AffineProbe::standard_halfplane();
    let assertions = vec![
        assertion_i(&probe, &tol),
        assertion_ii(&probe, &tol),
        assertion_iii(&probe, &tol),
        assertion_iv(&tol),
    ];
    let passed = assertions.iter().all(|a| a.passed);
    CounterexampleReport {
        probe,
        tolerances: tol,
        assertions,
        passed,
    }
}

fn assertion_i(probe: &AffineProbe, tol: &SuiteTolerances) -> AssertionResult {
    let h = probe.space;
    let (x, y) = (hp(0.5, 0.5), hp(-0.5, 0.5));
    let s5 = 5f64.sqrt();
    let endpoint = -(artanh(2.0 / s5) - artanh(1.0 / s5)) / s5;
    let (fx, fy) = (probe.f0_value(&x), probe.f0_value(&y));
    let mut checks = vec![
        NumericCheck::close("f0(1/2, 1/2)", vec![fx], vec![endpoint], tol.analytic),
        NumericCheck::close("f0(-1/2, 1/2)", vec![fy], vec![endpoint], tol.analytic),
        NumericCheck::below("f0(1/2, 1/2) < c0", fx, LEVEL_C0),
        NumericCheck::below("f0(-1/2, 1/2) < c0", fy, LEVEL_C0),
    ];
    match h.geodesic(&x, &y) {
        Ok(seg) => {
            let mid = seg.eval(0.5);
            let fm = probe.f0_value(&mid);
            checks.push(NumericCheck::close(
                "geodesic midpoint",
                mid.coords.clone(),
                vec![0.0, std::f64::consts::FRAC_1_SQRT_2],
                tol.analytic,
            ));
            checks.push(NumericCheck::close(
                "f0(midpoint)",
                vec![fm],
                vec![std::f64::consts::FRAC_1_SQRT_2.ln()],
                tol.analytic,
            ));
            checks.push(NumericCheck::above("f0(midpoint) > c0", fm, LEVEL_C0));
        }
        Err(e) => checks.push(NumericCheck::failed("geodesic midpoint", &e)),
    }
    AssertionResult::new(
        "i",
        "f0 is not quasi-convex: L_{-0.4} is not geodesically convex",
        checks,
    )
}

fn assertion_ii(probe: &AffineProbe, tol: &SuiteTolerances) -> AssertionResult {
    let h = probe.space;
    let z = hp(2.0, 1.0);
    let half_log = 2f64.sqrt() / 8.0 * (3.0 + 2.0 * 2f64.sqrt()).ln();
    let expected_grad = vec![half_log + 0.5, half_log - 0.5];
    let mut checks = Vec::new();
    let field = probe.transport_field(&z);
    let analytic = gradient_hp(&halfplane::f0_field(), &z);
    let fd = h.gradient_fd(|p| probe.f0_value(p), &z, tol.fd_step);
    match (field, analytic, fd) {
        (Ok(field), Ok(analytic), Ok(fd)) => {
            checks.push(NumericCheck::close(
                "X0(z)",
                field.comps.clone(),
                vec![1.0, 0.0],
                tol.analytic,
            ));
            checks.push(NumericCheck::close(
                "grad f0(z), analytic",
                analytic.comps.clone(),
                expected_grad.clone(),
                tol.analytic,
            ));
            checks.push(NumericCheck::close(
                "grad f0(z), finite differences",
                fd.comps.clone(),
                expected_grad,
                tol.gradient_fd,
            ));
            let gap = dist_inf(&analytic.comps, &field.comps);
            checks.push(NumericCheck::above(
                "|grad f0(z) - X0(z)|_inf > 0",
                gap,
                tol.gradient_fd,
            ));
        }
        (a, b, c) => {
            for e in [a.err(), b.err(), c.err()].into_iter().flatten() {
                checks.push(NumericCheck::failed("z = (2, 1)", &e));
            }
        }
    }
    AssertionResult::new("ii", "grad f0(z) != X0(z) at z = (2, 1)", checks)
}

fn assertion_iii(probe: &AffineProbe, tol: &SuiteTolerances) -> AssertionResult {
    let h = probe.space;
    let z = hp(2.0, 1.0);
    let jac = halfplane::x0_jacobian(2.0, 1.0);
    let mut checks = vec![NumericCheck::close(
        "(dX0^1/dt1, dX0^2/dt1) at z",
        vec![jac[0][0], jac[1][0]],
        vec![0.0, -0.5],
        tol.analytic,
    )];
    match connection_apply(&halfplane::x0_field(), &VectorField2::coordinate(0), &z) {
        Ok(v) => checks.push(NumericCheck::close(
            "nabla_{d/dt1} X0 at z, Christoffel",
            v.comps,
            vec![0.0, 0.5],
            tol.connection_fd,
        )),
        Err(e) => checks.push(NumericCheck::failed(
            "nabla_{d/dt1} X0 at z, Christoffel",
            &e,
        )),
    }
    let dir = h.raw_tangent(&z, vec![1.0, 0.0]);
    match h.covariant_derivative_fd(|p| probe.transport_field(p), &z, &dir, tol.fd_step) {
        Ok(v) => checks.push(NumericCheck::close(
            "nabla_{d/dt1} X0 at z, transported differences",
            v.comps,
            vec![0.0, 0.5],
            tol.connection_fd,
        )),
        Err(e) => checks.push(NumericCheck::failed(
            "nabla_{d/dt1} X0 at z, transported differences",
            &e,
        )),
    }
    AssertionResult::new(
        "iii",
        "X0 is not parallel: nabla_{d/dt1} X0 = (0, 1/2) at z",
        checks,
    )
}

fn assertion_iv(tol: &SuiteTolerances) -> AssertionResult {
    let z = hp(2.0, 1.0);
    let mut checks = Vec::new();
    match curl_oneform(&halfplane::x0_field(), &z) {
        Ok(c) => checks.push(NumericCheck::close(
            "curl of X0 at z, analytic",
            vec![c],
            vec![0.5],
            tol.analytic,
        )),
        Err(e) => checks.push(NumericCheck::failed("curl of X0 at z, analytic", &e)),
    }
    let step = tol.fd_step;
    let fd_field = VectorField2::with_jacobian(halfplane::x0_closed_form, move |t1, t2| {
        let (p1, m1) = (
            halfplane::x0_closed_form(t1 + step, t2),
            halfplane::x0_closed_form(t1 - step, t2),
        );
        let (p2, m2) = (
            halfplane::x0_closed_form(t1, t2 + step),
            halfplane::x0_closed_form(t1, t2 - step),
        );
        let d = 0.5 / step;
        [
            [(p1[0] - m1[0]) * d, (p2[0] - m2[0]) * d],
            [(p1[1] - m1[1]) * d, (p2[1] - m2[1]) * d],
        ]
    });
    match curl_oneform(&fd_field, &z) {
        Ok(c) => checks.push(NumericCheck::close(
            "curl of X0 at z, finite differences",
            vec![c],
            vec![0.5],
            tol.connection_fd,
        )),
        Err(e) => checks.push(NumericCheck::failed(
            "curl of X0 at z, finite differences",
            &e,
        )),
    }
    AssertionResult::new(
        "iv",
        "X0 is not a gradient field: d(X0^flat) != 0 at z",
        checks,
    )
}
