//! Closed forms of `f0` and `X0` on the half-plane for the probe
//! `x0 = (0, 1)`, `u0 = (0, 1)`.

use crate::linalg::artanh;
use crate::poincare::{ScalarField2, VectorField2};
use crate::space::Point;

fn branch_zero(t1: f64) -> bool {
    t1.abs() <= crate::tol::HALFPLANE_BRANCH_REL
}

/// `b_x = (t1^2 + t2^2 - 1) / (2 t1)` and `r_x = sqrt(b_x^2 + 1)` (for `t1 != 0`).
pub fn probe_params(t1: f64, t2: f64) -> (f64, f64) {
    let b = (t1 * t1 + t2 * t2 - 1.0) / (2.0 * t1);
    (b, (b * b + 1.0).sqrt())
}

/// `f0(t1, t2) = Q d / rho` with `Q = (t1^2 + t2^2 - 1)/2`, `rho = sqrt(Q^2 + t1^2)`
/// and `d` the distance to `x0`; equal to [`f0_artanh_form`] and stable near `t1 = 0`.
pub fn f0_closed_form(t1: f64, t2: f64) -> f64 {
    let q = 0.5 * (t1 * t1 + t2 * t2 - 1.0);
    let rho = q.hypot(t1);
    if rho == 0.0 {
        return 0.0;
    }
    let d = ((0.5 * (t1 * t1 + (t2 - 1.0) * (t2 - 1.0)) + rho) / t2).ln_1p();
    q * d / rho
}

/// `f0(t1, t2)`: `ln t2` on the axis `t1 = 0`, otherwise
/// `(b/r) (artanh(b/r) - artanh((b - t1)/r))`. Loses accuracy as `t1 -> 0`.
pub fn f0_artanh_form(t1: f64, t2: f64) -> f64 {
    if branch_zero(t1) {
        return t2.ln();
    }
    let (b, r) = probe_params(t1, t2);
    b / r * (artanh(b / r) - artanh((b - t1) / r))
}

/// [`f0_closed_form`] at a half-plane point.
pub fn f0_closed_form_hp(x: &Point) -> f64 {
    f0_closed_form(x.coords[0], x.coords[1])
}

/// Analytic partials of `f0`.
///
/// With `Q = (t1^2 + t2^2 - 1)/2`, `rho = sqrt(Q^2 + t1^2)` and
/// `d = ln((Q + 1 + rho)/t2)` (the distance to `x0`), `f0 = Q d / rho`.
pub fn f0_partials(t1: f64, t2: f64) -> [f64; 2] {
    let q = 0.5 * (t1 * t1 + t2 * t2 - 1.0);
    let rho = q.hypot(t1);
    if rho < 1e-300 {
        return [0.0, 1.0];
    }
    let d = ((0.5 * (t1 * t1 + (t2 - 1.0) * (t2 - 1.0)) + rho) / t2).ln_1p();
    let dq = [t1, t2];
    let drho = [(q * t1 + t1) / rho, q * t2 / rho];
    let dd = [t1 / rho, (t2 * t2 - q - 1.0) / (t2 * rho)];
    let mut out = [0.0; 2];
    for k in 0..2 {
        out[k] = (dq[k] * d + q * dd[k]) / rho - q * d * drho[k] / (rho * rho);
    }
    out
}

/// `f0` as a scalar field with analytic partials.
pub fn f0_field() -> ScalarField2 {
    ScalarField2::with_partials(f0_closed_form, f0_partials)
}

/// `X0(t1, t2)`: `(0, t2)` on the axis, otherwise
/// `((b t2^2 - t2 (b - t1)) / (b^2 + 1), (b t2 (b - t1) + t2^2) / (b^2 + 1))`.
pub fn x0_closed_form(t1: f64, t2: f64) -> [f64; 2] {
    if branch_zero(t1) {
        return [0.0, t2];
    }
    let (b, _) = probe_params(t1, t2);
    let den = b * b + 1.0;
    [
        (b * t2 * t2 - t2 * (b - t1)) / den,
        (b * t2 * (b - t1) + t2 * t2) / den,
    ]
}

fn x0_branch_free(t1: f64, t2: f64) -> [f64; 2] {
    let q = 0.5 * (t1 * t1 + t2 * t2 - 1.0);
    let den = q * q + t1 * t1;
    [
        t1 * t2 * (q * t2 - q + t1 * t1) / den,
        t2 * (q * q - q * t1 * t1 + t1 * t1 * t2) / den,
    ]
}

/// Jacobian `[dX0^k/dt_j]`, from the branch-free form
/// `X0 = (t1 t2 (Q t2 - Q + t1^2), t2 (Q^2 - Q t1^2 + t1^2 t2)) / (Q^2 + t1^2)`.
pub fn x0_jacobian(t1: f64, t2: f64) -> [[f64; 2]; 2] {
    let q = 0.5 * (t1 * t1 + t2 * t2 - 1.0);
    let den = q * q + t1 * t1;
    if den < 1e-300 {
        // removable singularity at x0
        let h = 1e-4;
        let (p1, m1) = (x0_branch_free(h, t2), x0_branch_free(-h, t2));
        let (p2, m2) = (x0_branch_free(t1, t2 + h), x0_branch_free(t1, t2 - h));
        return [
            [(p1[0] - m1[0]) / (2.0 * h), (p2[0] - m2[0]) / (2.0 * h)],
            [(p1[1] - m1[1]) / (2.0 * h), (p2[1] - m2[1]) / (2.0 * h)],
        ];
    }
    let n1 = t1 * t2 * (q * t2 - q + t1 * t1);
    let n2 = t2 * (q * q - q * t1 * t1 + t1 * t1 * t2);
    let dn1 = [
        t2 * (q * t2 - q + t1 * t1) + t1 * t2 * (t1 * t2 + t1),
        t1 * (q * t2 - q + t1 * t1) + t1 * t2 * (t2 * t2 + q - t2),
    ];
    let dn2 = [
        t2 * (2.0 * t1 * t2 - t1 * t1 * t1),
        (q * q - q * t1 * t1 + t1 * t1 * t2) + t2 * (2.0 * q * t2 - t2 * t1 * t1 + t1 * t1),
    ];
    let dden = [2.0 * q * t1 + 2.0 * t1, 2.0 * q * t2];
    let mut jac = [[0.0; 2]; 2];
    for j in 0..2 {
        jac[0][j] = (dn1[j] * den - n1 * dden[j]) / (den * den);
        jac[1][j] = (dn2[j] * den - n2 * dden[j]) / (den * den);
    }
    jac
}

/// `X0` as a vector field with analytic partials.
pub fn x0_field() -> VectorField2 {
    VectorField2::with_jacobian(x0_closed_form, x0_jacobian)
}
