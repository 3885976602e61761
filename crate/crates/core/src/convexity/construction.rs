//! Explicit chord leaving `L_{c,f0}` for `0 < c < |u0| D_kappa / 2` (positive
//! curvature) and `c < 0` (negative curvature).
//!
//! `z` is the axis point with `f0(z) = c`, `u` the unit normal to the axis at
//! `z`, and `p_eps, q_eps = exp_z(+-eps u)`. The endpoint `p_eps` is moved
//! along its ray from `x0` to `p = exp_{x0}(s log_{x0} p_eps)`, which scales
//! `f0` by `s`; the scale is searched over the range keeping `p` in the
//! sub-level set (and in the domain ball), and the one that pushes the chord
//! `[p, q_eps]` furthest above `c` is kept.

use crate::affine::AffineProbe;
use crate::linalg::{axpy, scale};
use crate::space::{Point, SpaceKind};
use crate::tol;

const SCALE_GRID: usize = 64;
const CHORD_GRID: usize = 64;
const EPS_HALVINGS: usize = 6;

/// Whether the construction is defined for `probe` at level `c`.
pub fn construction_applies(probe: &AffineProbe, c: f64) -> bool {
    let space = probe.space;
    if space.dim() < 2 {
        return false;
    }
    match space.kind() {
        SpaceKind::Sphere => c > 0.0 && c < probe.u0_norm() * probe.domain_radius(),
        SpaceKind::Hyperbolic | SpaceKind::HalfPlane => c < 0.0,
        SpaceKind::Euclidean => false,
    }
}

fn initial_eps(probe: &AffineProbe) -> f64 {
    let space = probe.space;
    if space.kind() == SpaceKind::Sphere {
        0.1 * space.diameter_bound()
    } else {
        0.5 / space.kappa().abs().sqrt()
    }
}

/// Largest excess of `f0` over `c` along the chord `[p, q]`, sampled on an interior grid.
fn chord_excess(probe: &AffineProbe, p: &Point, q: &Point, c: f64) -> f64 {
    let Ok(seg) = probe.space.geodesic(p, q) else {
        return f64::NEG_INFINITY;
    };
    (1..=CHORD_GRID)
        .map(|k| probe.f0_value(&seg.eval(k as f64 / (CHORD_GRID + 1) as f64)) - c)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Unit tangent at `x0` orthogonal to `u0`.
fn axis_normal(probe: &AffineProbe) -> Option<Vec<f64>> {
    let space = probe.space;
    let n = probe.u0_norm();
    let e = scale(&probe.u0.comps, 1.0 / n);
    let basis = space.tangent_basis(&probe.x0);
    let b = basis.iter().min_by(|a, b| {
        let ia = space.inner_at(&probe.x0.coords, &a.comps, &e).abs();
        let ib = space.inner_at(&probe.x0.coords, &b.comps, &e).abs();
        ia.total_cmp(&ib)
    })?;
    let w = axpy(
        &b.comps,
        -space.inner_at(&probe.x0.coords, &b.comps, &e),
        &e,
    );
    let wn = space.inner_at(&probe.x0.coords, &w, &w).sqrt();
    (wn > 1e-12).then(|| scale(&w, 1.0 / wn))
}

/// A pair `(p, q)` of `L_{c,f0}` whose joining geodesic leaves `L_{c,f0}`, or
/// `None` when the construction does not apply or finds no such pair.
pub fn necessity_construction(probe: &AffineProbe, c: f64) -> Option<(Point, Point)> {
    if !construction_applies(probe, c) {
        return None;
    }
    let space = probe.space;
    let positive = space.kind() == SpaceKind::Sphere;
    let z = probe.axis_point(c / probe.u0_norm()).ok()?;
    let normal = space.raw_tangent(&probe.x0, axis_normal(probe)?);
    let u = space.transport_to(&normal, &z).ok()?;
    let mut eps = initial_eps(probe);
    for _ in 0..=EPS_HALVINGS {
        if let Some(pair) = try_eps(probe, c, &z, &u, eps, positive) {
            return Some(pair);
        }
        eps *= 0.5;
    }
    None
}

fn try_eps(
    probe: &AffineProbe,
    c: f64,
    z: &Point,
    u: &crate::space::TangentVec,
    eps: f64,
    positive: bool,
) -> Option<(Point, Point)> {
    let space = probe.space;
    let p_eps = space.exp_map(z, &u.scaled(eps)).ok()?;
    let q_eps = space.exp_map(z, &u.scaled(-eps)).ok()?;
    let f_p = probe.f0_value(&p_eps);
    if !(probe.f0_value(&q_eps) <= c && f_p <= c) {
        return None;
    }
    let ray = space.log_map(&probe.x0, &p_eps).ok()?;
    // Admissible scales keep s f0(p_eps) <= c; positive curvature also keeps p in the domain ball.
    let (lo, hi) = if positive {
        let mut hi = (probe.domain_radius() / space.norm(&ray)) * (1.0 - 1e-6);
        if f_p > 0.0 {
            hi = hi.min(c / f_p);
        }
        (1.0, hi)
    } else {
        if f_p >= 0.0 {
            return None;
        }
        (c / f_p, 1.0)
    };
    if !(hi > lo) {
        return None;
    }
    let mut best: Option<(f64, Point)> = None;
    for k in 0..=SCALE_GRID {
        let s = lo + (hi - lo) * k as f64 / SCALE_GRID as f64;
        let Ok(p) = space.exp_map(&probe.x0, &ray.scaled(s)) else {
            continue;
        };
        if probe.f0_value(&p) > c {
            continue;
        }
        let excess = chord_excess(probe, &p, &q_eps, c);
        if excess > tol::WITNESS_MARGIN && best.as_ref().is_none_or(|(b, _)| excess > *b) {
            best = Some((excess, p));
        }
    }
    best.map(|(_, p)| (p, q_eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::SpaceSpec;

    #[test]
    fn sphere_construction_in_range() {
        let probe = AffineProbe::unit_at_origin(SpaceSpec::sphere(2, 1.0).unwrap());
        for c in [0.05, 0.2, 0.5, 0.8, 1.2, 1.5, 1.55] {
            let (p, q) = necessity_construction(&probe, c).unwrap_or_else(|| panic!("c = {c}"));
            assert!(probe.f0_value(&p) <= c && probe.f0_value(&q) <= c);
            assert!(chord_excess(&probe, &p, &q, c) > 1e-12);
        }
        assert!(necessity_construction(&probe, -0.1).is_none());
        assert!(necessity_construction(&probe, 1.6).is_none());
    }

    #[test]
    fn negative_curvature_construction() {
        let probe = AffineProbe::standard_halfplane();
        for c in [-0.05, -0.4, -1.0, -2.5] {
            let (p, q) = necessity_construction(&probe, c).unwrap_or_else(|| panic!("c = {c}"));
            assert!(probe.f0_value(&p) <= c && probe.f0_value(&q) <= c);
            assert!(chord_excess(&probe, &p, &q, c) > 1e-12, "c = {c}");
        }
        assert!(necessity_construction(&probe, 0.1).is_none());
        let hyp = AffineProbe::unit_at_origin(SpaceSpec::hyperbolic(3, -2.0).unwrap());
        assert!(necessity_construction(&hyp, -0.3).is_some());
    }
}
