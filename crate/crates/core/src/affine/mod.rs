//! The function `f0(x) = <u0, exp_{x0}^{-1} x>` and the field
//! `X0(x) = P_{x, x0} u0` on every model space, checkers for the
//! linear-affine characterisation, and the half-plane counterexample suite.

mod checks;
mod counterexample;
pub mod halfplane;

pub use checks::{
    check_affine_formula, check_gradient_field, check_transport_commutation, hessian_probe,
    CheckReport, Verdict,
};
pub use counterexample::{
    counterexample_suite, counterexample_suite_with, AssertionResult, CounterexampleReport,
    NumericCheck, Relation, SuiteTolerances, LEVEL_C0,
};
pub use halfplane::f0_closed_form_hp;

use serde::Serialize;

use crate::error::{GeoError, Result};
use crate::space::{Point, SpaceKind, SpaceSpec, TangentVec};

/// The pair `(x0, u0)` defining `f0` and `X0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AffineProbe {
    pub space: SpaceSpec,
    pub x0: Point,
    pub u0: TangentVec,
}

impl AffineProbe {
    pub fn new(space: SpaceSpec, x0: Point, u0: TangentVec) -> Result<Self> {
        if x0.space != space || !u0.base.approx_eq(&x0, crate::tol::BASE_MATCH) {
            return Err(GeoError::BaseMismatch);
        }
        if space.norm(&u0) == 0.0 {
            return Err(GeoError::ZeroProbe);
        }
        Ok(AffineProbe { space, x0, u0 })
    }

    /// `x0 = (0, 1)`, `u0 = (0, 1)` on the half-plane.
    pub fn standard_halfplane() -> Self {
        let space = SpaceSpec::half_plane();
        let x0 = space.origin();
        let u0 = space.raw_tangent(&x0, vec![0.0, 1.0]);
        AffineProbe { space, x0, u0 }
    }

    /// Unit probe at the canonical origin along the first basis direction.
    pub fn unit_at_origin(space: SpaceSpec) -> Self {
        let x0 = space.origin();
        let u0 = space.tangent_basis(&x0).swap_remove(0);
        AffineProbe { space, x0, u0 }
    }

    pub fn is_standard_halfplane(&self) -> bool {
        self.space.kind() == SpaceKind::HalfPlane
            && self.x0.coords == [0.0, 1.0]
            && self.u0.comps == [0.0, 1.0]
    }

    pub fn u0_norm(&self) -> f64 {
        self.space.norm(&self.u0)
    }

    /// Radius of `dom f0`: `D_kappa / 2`, infinite for `kappa <= 0`.
    pub fn domain_radius(&self) -> f64 {
        self.space.diameter_bound() / 2.0
    }

    /// `f0(x) = <u0, log_{x0} x>` inside `B(x0, D_kappa/2)`, `+inf` outside
    /// (the ball is all of `M` when `kappa <= 0`).
    pub fn f0_value(&self, x: &Point) -> f64 {
        if self.space.kind() == SpaceKind::Sphere
            && self.space.distance(&self.x0, x) >= self.domain_radius()
        {
            return f64::INFINITY;
        }
        match self.space.log_map(&self.x0, x) {
            Ok(v) => self
                .space
                .inner_at(&self.x0.coords, &self.u0.comps, &v.comps),
            Err(_) => f64::INFINITY,
        }
    }

    /// `X0(x) = P_{x, x0} u0`, the transport of `u0` along the minimal geodesic.
    pub fn transport_field(&self, x: &Point) -> Result<TangentVec> {
        self.space.transport_to(&self.u0, x)
    }

    /// The point `exp_{x0}(s u0/|u0|)` on the axis, where `f0 = s |u0|`.
    pub fn axis_point(&self, s: f64) -> Result<Point> {
        let unit = self.u0.scaled(s / self.u0_norm());
        self.space.exp_map(&self.x0, &unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, FRAC_1_SQRT_2};

    fn hp(t1: f64, t2: f64) -> Point {
        SpaceSpec::half_plane().point(vec![t1, t2]).unwrap()
    }

    #[test]
    fn zero_probe_rejected() {
        let s = SpaceSpec::euclidean(2).unwrap();
        let o = s.origin();
        let z = s.zero_tangent(&o);
        assert_eq!(AffineProbe::new(s, o, z), Err(GeoError::ZeroProbe));
    }

    #[test]
    fn f0_examples() {
        let p = AffineProbe::standard_halfplane();
        let want = -(crate::linalg::artanh(2.0 / 5f64.sqrt())
            - crate::linalg::artanh(1.0 / 5f64.sqrt()))
            / 5f64.sqrt();
        assert!((p.f0_value(&hp(0.5, 0.5)) - want).abs() < 1e-14);
        assert!((p.f0_value(&hp(0.0, FRAC_1_SQRT_2)) - FRAC_1_SQRT_2.ln()).abs() < 1e-15);
        assert_eq!(p.f0_value(&p.x0), 0.0);
        assert!((p.f0_value(&hp(0.0, E * E)) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn f0_is_infinite_outside_sphere_domain() {
        let s = SpaceSpec::sphere(2, 1.0).unwrap();
        let p = AffineProbe::unit_at_origin(s);
        let equator = s.point(vec![0.0, 1.0, 0.0]).unwrap();
        assert!(p.f0_value(&equator).is_infinite());
        let inside = p.axis_point(1.2).unwrap();
        assert!((p.f0_value(&inside) - 1.2).abs() < 1e-14);
    }

    #[test]
    fn transport_field_examples() {
        let p = AffineProbe::standard_halfplane();
        let z = p.transport_field(&hp(2.0, 1.0)).unwrap();
        assert!((z.comps[0] - 1.0).abs() < 1e-14 && z.comps[1].abs() < 1e-14);
        assert_eq!(p.transport_field(&p.x0).unwrap().comps, vec![0.0, 1.0]);
        let w = p.transport_field(&hp(0.5, 0.5)).unwrap();
        assert!((w.comps[0] - 0.3).abs() < 1e-14 && (w.comps[1] - 0.4).abs() < 1e-14);
    }
}
