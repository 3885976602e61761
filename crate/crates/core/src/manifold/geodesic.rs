use serde::Serialize;

use super::unchecked_exp;
use crate::space::{Point, SpaceSpec, TangentVec};

/// The minimal geodesic `t -> exp(start, t * initial_velocity)`; `t = 1` reaches `end`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeodesicSegment {
    pub space: SpaceSpec,
    pub start: Point,
    pub end: Point,
    pub initial_velocity: TangentVec,
}

impl GeodesicSegment {
    /// Point at parameter `t` (any real `t`; `[0, 1]` spans the segment).
    pub fn eval(&self, t: f64) -> Point {
        if t == 0.0 {
            return self.start.clone();
        }
        let v = crate::linalg::scale(&self.initial_velocity.comps, t);
        self.space
            .raw_point(unchecked_exp(&self.space, &self.start.coords, &v))
    }

    /// Velocity `gamma'(t)`, anchored at `eval(t)`.
    pub fn velocity(&self, t: f64) -> TangentVec {
        let base = self.eval(t);
        let comps = super::velocity_at(
            &self.space,
            &self.start.coords,
            &self.initial_velocity.comps,
            t,
        );
        self.space.raw_tangent(&base, comps)
    }

    /// Riemannian length, equal to the constant speed.
    pub fn length(&self) -> f64 {
        self.space.norm(&self.initial_velocity)
    }
}
