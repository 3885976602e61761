//! The Poincare half-plane in natural coordinates: Christoffel symbols, the
//! Levi-Civita connection on coordinate fields, the parallel-transport ODE,
//! the intrinsic gradient and the exterior derivative of the dual one-form.
//!
//! These routines work directly with `(t1, t2)` and are independent of the
//! Mobius-based closed forms in [`crate::manifold`]; tests use each side to
//! check the other.

mod field;

pub use field::{ScalarField2, VectorField2, PARTIALS_FD_STEP};

use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::linalg::artanh;
use crate::space::{Point, SpaceKind, SpaceSpec, TangentVec};
use crate::tol;

fn ensure_halfplane(x: &Point) -> Result<()> {
    if x.space.kind() != SpaceKind::HalfPlane {
        return Err(GeoError::InvalidPoint(format!(
            "{} is not the half-plane",
            x.space
        )));
    }
    Ok(())
}

fn is_vertical(t1: f64, s1: f64) -> bool {
    (t1 - s1).abs() <= tol::HALFPLANE_BRANCH_REL * (1.0 + t1.abs() + s1.abs())
}

/// Geodesic through two points: a vertical half-line or a semicircle
/// centred on the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HalfPlaneGeodesicParams {
    VerticalLine { a: f64 },
    Semicircle { b: f64, r: f64 },
}

/// Centre `b_xy` and radius `r_xy` of the geodesic through `x = (t1, t2)` and `y = (s1, s2)`.
pub fn halfplane_params(x: &Point, y: &Point) -> Result<HalfPlaneGeodesicParams> {
    ensure_halfplane(x)?;
    ensure_halfplane(y)?;
    let (t1, t2) = (x.coords[0], x.coords[1]);
    let (s1, s2) = (y.coords[0], y.coords[1]);
    if t1 == s1 && t2 == s2 {
        return Err(GeoError::CoincidentPoints);
    }
    if is_vertical(t1, s1) {
        return Ok(HalfPlaneGeodesicParams::VerticalLine { a: t1 });
    }
    let b = (s1 * s1 + s2 * s2 - (t1 * t1 + t2 * t2)) / (2.0 * (s1 - t1));
    let r = ((s1 - b).powi(2) + s2 * s2).sqrt();
    Ok(HalfPlaneGeodesicParams::Semicircle { b, r })
}

/// Christoffel symbols `gamma[k][i][j]` of the Levi-Civita connection at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChristoffelTable {
    pub gamma: [[[f64; 2]; 2]; 2],
}

impl ChristoffelTable {
    pub fn at(x: &Point) -> Result<Self> {
        ensure_halfplane(x)?;
        let inv = 1.0 / x.coords[1];
        let mut gamma = [[[0.0; 2]; 2]; 2];
        gamma[0][0][1] = -inv;
        gamma[0][1][0] = -inv;
        gamma[1][1][1] = -inv;
        gamma[1][0][0] = inv;
        Ok(ChristoffelTable { gamma })
    }

    /// `Gamma^k_ij u^i v^j`
    pub fn contract(&self, u: [f64; 2], v: [f64; 2]) -> [f64; 2] {
        let mut out = [0.0; 2];
        for (k, o) in out.iter_mut().enumerate() {
            for (row, ui) in self.gamma[k].iter().zip(u) {
                for (g, vj) in row.iter().zip(v) {
                    *o += g * ui * vj;
                }
            }
        }
        out
    }
}

/// `(nabla_Y X)(x)` from the coordinate formula
/// `nabla_Y X = (Y^j d_j X^1 - (X^1 Y^2 + X^2 Y^1)/t2, Y^j d_j X^2 + (X^1 Y^1 - X^2 Y^2)/t2)`.
pub fn connection_apply(
    field: &VectorField2,
    along: &VectorField2,
    x: &Point,
) -> Result<TangentVec> {
    ensure_halfplane(x)?;
    let (t1, t2) = (x.coords[0], x.coords[1]);
    let jac = field.jacobian(t1, t2).ok_or(GeoError::MissingPartials)?;
    let [x1, x2] = field.eval(t1, t2);
    let [y1, y2] = along.eval(t1, t2);
    let comps = vec![
        y1 * jac[0][0] + y2 * jac[0][1] - x1 * y2 / t2 - x2 * y1 / t2,
        y1 * jac[1][0] + y2 * jac[1][1] + x1 * y1 / t2 - x2 * y2 / t2,
    ];
    Ok(SpaceSpec::half_plane().raw_tangent(x, comps))
}

/// Point and velocity of the unit-speed parametrisation of `params` at arc parameter `s`:
/// `(a, e^s)` for vertical lines, `(b - r tanh s, r / cosh s)` for semicircles.
pub fn unit_speed_geodesic(params: &HalfPlaneGeodesicParams, s: f64) -> ([f64; 2], [f64; 2]) {
    match *params {
        HalfPlaneGeodesicParams::VerticalLine { a } => ([a, s.exp()], [0.0, s.exp()]),
        HalfPlaneGeodesicParams::Semicircle { b, r } => {
            let (sh, ch) = (s.sinh(), s.cosh());
            (
                [b - r * s.tanh(), r / ch],
                [-r / (ch * ch), -r * sh / (ch * ch)],
            )
        }
    }
}

/// Left-hand sides of the parallel-transport system along the geodesic `params`
/// at arc parameter `s`:
///
/// ```text
/// d(X^1 o g)/ds - (X^1/g^2) dg^2/ds - (X^2/g^2) dg^1/ds
/// d(X^2 o g)/ds + (X^1/g^2) dg^1/ds - (X^2/g^2) dg^2/ds
/// ```
///
/// Both vanish exactly when `X` is parallel along the geodesic at `s`.
pub fn transport_ode_residual(
    field: &VectorField2,
    params: &HalfPlaneGeodesicParams,
    s: f64,
) -> (f64, f64) {
    let ([g1, g2], [dg1, dg2]) = unit_speed_geodesic(params, s);
    let [x1, x2] = field.eval(g1, g2);
    let jac = field.jacobian_or_fd(g1, g2);
    let dx1 = jac[0][0] * dg1 + jac[0][1] * dg2;
    let dx2 = jac[1][0] * dg1 + jac[1][1] * dg2;
    (
        dx1 - x1 / g2 * dg2 - x2 / g2 * dg1,
        dx2 + x1 / g2 * dg1 - x2 / g2 * dg2,
    )
}

/// `grad f(x) = t2^2 (df/dt1, df/dt2)`.
pub fn gradient_hp(f: &ScalarField2, x: &Point) -> Result<TangentVec> {
    ensure_halfplane(x)?;
    let (t1, t2) = (x.coords[0], x.coords[1]);
    let [d1, d2] = f.partials(t1, t2);
    Ok(SpaceSpec::half_plane().raw_tangent(x, vec![t2 * t2 * d1, t2 * t2 * d2]))
}

/// Coefficient of `dt1 ^ dt2` in `d(X^flat)` where `X^flat = (X^1 dt1 + X^2 dt2) / t2^2`
/// is the one-form dual to `X`:
/// `d(X^2/t2^2)/dt1 - d(X^1/t2^2)/dt2`. It vanishes whenever `X` is a gradient.
pub fn curl_oneform(field: &VectorField2, x: &Point) -> Result<f64> {
    ensure_halfplane(x)?;
    let (t1, t2) = (x.coords[0], x.coords[1]);
    let jac = field.jacobian(t1, t2).ok_or(GeoError::MissingPartials)?;
    let [x1, _] = field.eval(t1, t2);
    let t2sq = t2 * t2;
    let d_x2_dt1 = jac[1][0] / t2sq;
    let d_x1_dt2 = jac[0][1] / t2sq - 2.0 * x1 / (t2sq * t2);
    Ok(d_x2_dt1 - d_x1_dt2)
}

/// `exp_y^{-1} x` by the piecewise centre/radius formula, kept literal
/// (vertical branch `(0, s2 ln(t2/s2))`, semicircle branch with the two
/// `artanh` terms). Loses accuracy as `t1 -> s1`; the kernel uses a
/// branch-free rearrangement instead.
pub fn exp_inv_literal(y: &Point, x: &Point) -> Result<[f64; 2]> {
    let (s1, s2) = (y.coords[0], y.coords[1]);
    let (t1, t2) = (x.coords[0], x.coords[1]);
    if t1 == s1 && t2 == s2 {
        return Ok([0.0, 0.0]);
    }
    match halfplane_params(x, y)? {
        HalfPlaneGeodesicParams::VerticalLine { .. } => Ok([0.0, s2 * (t2 / s2).ln()]),
        HalfPlaneGeodesicParams::Semicircle { b, r } => {
            let k = s2 / r * (artanh((b - s1) / r) - artanh((b - t1) / r));
            Ok([k * s2, k * (b - s1)])
        }
    }
}

/// The geodesic joining `x` to `y` in the centre/radius parametrisation,
/// `s in [0, 1]`, with `gamma(0) = x`, `gamma(1) = y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JoiningGeodesic {
    pub params: HalfPlaneGeodesicParams,
    start: f64,
    end: f64,
}

impl JoiningGeodesic {
    pub fn new(x: &Point, y: &Point) -> Result<Self> {
        let params = halfplane_params(x, y)?;
        let (t1, t2) = (x.coords[0], x.coords[1]);
        let (s1, s2) = (y.coords[0], y.coords[1]);
        let (start, end) = match params {
            HalfPlaneGeodesicParams::VerticalLine { .. } => (t2.ln(), s2.ln()),
            HalfPlaneGeodesicParams::Semicircle { b, r } => {
                (artanh((b - t1) / r), artanh((b - s1) / r))
            }
        };
        Ok(JoiningGeodesic { params, start, end })
    }

    fn arc(&self, s: f64) -> f64 {
        (1.0 - s) * self.start + s * self.end
    }

    pub fn eval(&self, s: f64) -> [f64; 2] {
        unit_speed_geodesic(&self.params, self.arc(s)).0
    }

    /// Euclidean velocity `d gamma / ds`.
    pub fn velocity(&self, s: f64) -> [f64; 2] {
        let v = unit_speed_geodesic(&self.params, self.arc(s)).1;
        let k = self.end - self.start;
        [k * v[0], k * v[1]]
    }
}

/// Parallel transport of `w` (at `x`) to `y` by fixed-step RK4 on the
/// transport system along the joining geodesic.
pub fn transport_rk4(x: &Point, y: &Point, w: [f64; 2], steps: usize) -> Result<[f64; 2]> {
    ensure_halfplane(x)?;
    ensure_halfplane(y)?;
    if x.coords == y.coords {
        return Ok(w);
    }
    let geo = JoiningGeodesic::new(x, y)?;
    let rhs = |s: f64, v: [f64; 2]| -> [f64; 2] {
        let [_, g2] = geo.eval(s);
        let [dg1, dg2] = geo.velocity(s);
        [
            (v[0] * dg2 + v[1] * dg1) / g2,
            (-v[0] * dg1 + v[1] * dg2) / g2,
        ]
    };
    let steps = steps.max(1);
    let h = 1.0 / steps as f64;
    let mut v = w;
    for i in 0..steps {
        let s = i as f64 * h;
        let k1 = rhs(s, v);
        let k2 = rhs(
            s + h / 2.0,
            [v[0] + h / 2.0 * k1[0], v[1] + h / 2.0 * k1[1]],
        );
        let k3 = rhs(
            s + h / 2.0,
            [v[0] + h / 2.0 * k2[0], v[1] + h / 2.0 * k2[1]],
        );
        let k4 = rhs(s + h, [v[0] + h * k3[0], v[1] + h * k3[1]]);
        for c in 0..2 {
            v[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }
    }
    Ok(v)
}
