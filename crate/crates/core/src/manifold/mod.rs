//! Exponential and logarithm maps, distances, geodesics, parallel transport
//! and finite-difference covariant derivatives on the model spaces.

mod geodesic;
mod halfplane;
mod hyperboloid;
mod sphere;

pub use geodesic::GeodesicSegment;

use crate::error::{GeoError, Result};
use crate::linalg::{add, dot, minkowski, norm, scale, sub};
use crate::space::{Point, SpaceKind, SpaceSpec, TangentVec};
use crate::tol;

pub(crate) fn unchecked_exp(space: &SpaceSpec, x: &[f64], v: &[f64]) -> Vec<f64> {
    match space.kind() {
        SpaceKind::Euclidean => add(x, v),
        SpaceKind::Sphere => sphere::exp(space.radius(), x, v),
        SpaceKind::Hyperbolic => hyperboloid::exp(space.radius(), x, v),
        SpaceKind::HalfPlane => halfplane::exp(x, v),
    }
}

/// Transport of `w` from `x` along `t -> exp(x, t v)` to `t = 1`.
fn transport_along(space: &SpaceSpec, x: &[f64], v: &[f64], w: &[f64]) -> Vec<f64> {
    match space.kind() {
        SpaceKind::Euclidean => w.to_vec(),
        SpaceKind::Sphere => sphere::transport(space.radius(), x, v, w),
        SpaceKind::Hyperbolic => hyperboloid::transport(space.radius(), x, v, w),
        SpaceKind::HalfPlane => halfplane::transport(x, v, w),
    }
}

fn velocity_at(space: &SpaceSpec, x: &[f64], v: &[f64], t: f64) -> Vec<f64> {
    match space.kind() {
        SpaceKind::HalfPlane => halfplane::velocity(x, v, t),
        _ => transport_along(space, x, &scale(v, t), v),
    }
}

impl SpaceSpec {
    fn check_base(&self, x: &Point, v: &TangentVec) -> Result<()> {
        if x.space != *self || !v.base.approx_eq(x, tol::BASE_MATCH) {
            return Err(GeoError::BaseMismatch);
        }
        Ok(())
    }

    /// Riemannian inner product of two tangent vectors at the same base point.
    pub fn inner(&self, u: &TangentVec, v: &TangentVec) -> Result<f64> {
        if !u.base.approx_eq(&v.base, tol::BASE_MATCH) {
            return Err(GeoError::BaseMismatch);
        }
        Ok(self.inner_at(&u.base.coords, &u.comps, &v.comps))
    }

    pub(crate) fn inner_at(&self, x: &[f64], u: &[f64], v: &[f64]) -> f64 {
        match self.kind() {
            SpaceKind::Euclidean | SpaceKind::Sphere => dot(u, v),
            SpaceKind::Hyperbolic => minkowski(u, v),
            SpaceKind::HalfPlane => dot(u, v) / (x[1] * x[1]),
        }
    }

    pub fn norm(&self, v: &TangentVec) -> f64 {
        self.inner_at(&v.base.coords, &v.comps, &v.comps)
            .max(0.0)
            .sqrt()
    }

    /// `exp_x(v)`. On the sphere `|v|` must stay below `D_kappa`.
    pub fn exp_map(&self, x: &Point, v: &TangentVec) -> Result<Point> {
        self.check_base(x, v)?;
        if self.kind() == SpaceKind::Sphere {
            let len = self.norm(v);
            let bound = self.diameter_bound();
            if len >= bound {
                return Err(GeoError::CutLocusExceeded { norm: len, bound });
            }
        }
        Ok(self.raw_point(unchecked_exp(self, &x.coords, &v.comps)))
    }

    /// `exp_x^{-1}(y)`: the initial velocity of the minimal geodesic from `x` to `y`.
    /// Returns the zero vector when `x == y`.
    pub fn log_map(&self, x: &Point, y: &Point) -> Result<TangentVec> {
        let comps = match self.kind() {
            SpaceKind::Euclidean => sub(&y.coords, &x.coords),
            SpaceKind::Sphere => {
                let (log, d) = sphere::log(self.radius(), &x.coords, &y.coords);
                let bound = self.diameter_bound();
                match log {
                    Some(l) if d < bound - tol::CUT_LOCUS_MARGIN => l,
                    _ => return Err(GeoError::AntipodalPair { distance: d, bound }),
                }
            }
            SpaceKind::Hyperbolic => hyperboloid::log(self.radius(), &x.coords, &y.coords).0,
            SpaceKind::HalfPlane => halfplane::log(&x.coords, &y.coords),
        };
        Ok(self.raw_tangent(x, comps))
    }

    pub fn distance(&self, x: &Point, y: &Point) -> f64 {
        match self.kind() {
            SpaceKind::Euclidean => norm(&sub(&x.coords, &y.coords)),
            SpaceKind::Sphere => sphere::dist(self.radius(), &x.coords, &y.coords),
            SpaceKind::Hyperbolic => hyperboloid::dist(self.radius(), &x.coords, &y.coords),
            SpaceKind::HalfPlane => halfplane::dist(&x.coords, &y.coords),
        }
    }

    /// The unique minimal geodesic from `x` to `y` (constant when `x == y`).
    pub fn geodesic(&self, x: &Point, y: &Point) -> Result<GeodesicSegment> {
        let v = self.log_map(x, y)?;
        Ok(GeodesicSegment {
            space: *self,
            start: x.clone(),
            end: y.clone(),
            initial_velocity: v,
        })
    }

    /// The geodesic `t -> exp_x(t v)`, with `end = exp_x(v)`.
    pub fn geodesic_from_velocity(&self, x: &Point, v: &TangentVec) -> Result<GeodesicSegment> {
        let end = self.exp_map(x, v)?;
        Ok(GeodesicSegment {
            space: *self,
            start: x.clone(),
            end,
            initial_velocity: v.clone(),
        })
    }

    /// Parallel transport of `v` (anchored at `seg.eval(a)`) to `seg.eval(b)`.
    pub fn parallel_transport(
        &self,
        seg: &GeodesicSegment,
        v: &TangentVec,
        a: f64,
        b: f64,
    ) -> Result<TangentVec> {
        let from = seg.eval(a);
        self.check_base(&from, v)?;
        if a == b {
            return Ok(v.clone());
        }
        let vel = seg.velocity(a);
        let step = scale(&vel.comps, b - a);
        let comps = transport_along(self, &from.coords, &step, &v.comps);
        Ok(self.raw_tangent(&seg.eval(b), comps))
    }

    /// Transport of `v` from its base point to `y` along the minimal geodesic.
    pub fn transport_to(&self, v: &TangentVec, y: &Point) -> Result<TangentVec> {
        let seg = self.geodesic(&v.base, y)?;
        self.parallel_transport(&seg, v, 0.0, 1.0)
    }

    /// An orthonormal basis of `T_x M`.
    pub fn tangent_basis(&self, x: &Point) -> Vec<TangentVec> {
        let n = self.dim();
        let len = self.coord_len();
        let unit = |i: usize| {
            let mut e = vec![0.0; len];
            e[i] = 1.0;
            e
        };
        let comps: Vec<Vec<f64>> = match self.kind() {
            SpaceKind::Euclidean => (0..n).map(unit).collect(),
            SpaceKind::HalfPlane => vec![vec![x.coords[1], 0.0], vec![0.0, x.coords[1]]],
            SpaceKind::Sphere | SpaceKind::Hyperbolic => {
                let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
                for i in 0..len {
                    if basis.len() == n {
                        break;
                    }
                    let mut u = match self.kind() {
                        SpaceKind::Sphere => sphere::project(&x.coords, &unit(i)),
                        _ => hyperboloid::project(self.radius(), &x.coords, &unit(i)),
                    };
                    for b in &basis {
                        let c = self.inner_at(&x.coords, &u, b);
                        u = crate::linalg::axpy(&u, -c, b);
                    }
                    let un = self.inner_at(&x.coords, &u, &u).max(0.0).sqrt();
                    if un > 1e-6 {
                        basis.push(scale(&u, 1.0 / un));
                    }
                }
                basis
            }
        };
        comps.into_iter().map(|c| self.raw_tangent(x, c)).collect()
    }

    /// Central-difference covariant derivative of `field` at `x` in direction `dir`:
    /// `(P_{x<-g(h)} X(g(h)) - P_{x<-g(-h)} X(g(-h))) / 2h` along `g(t) = exp_x(t dir)`.
    pub fn covariant_derivative_fd<F>(
        &self,
        field: F,
        x: &Point,
        dir: &TangentVec,
        h: f64,
    ) -> Result<TangentVec>
    where
        F: Fn(&Point) -> Result<TangentVec>,
    {
        if !(h >= tol::MIN_STEP) {
            return Err(GeoError::StepTooSmall(h));
        }
        self.check_base(x, dir)?;
        let seg = GeodesicSegment {
            space: *self,
            start: x.clone(),
            end: self.raw_point(unchecked_exp(self, &x.coords, &dir.comps)),
            initial_velocity: dir.clone(),
        };
        let fwd = field(&seg.eval(h))?;
        let bwd = field(&seg.eval(-h))?;
        let fwd = self.parallel_transport(&seg, &fwd, h, 0.0)?;
        let bwd = self.parallel_transport(&seg, &bwd, -h, 0.0)?;
        let comps = scale(&sub(&fwd.comps, &bwd.comps), 0.5 / h);
        Ok(self.raw_tangent(x, comps))
    }

    /// Metric-dual gradient of `f` at `x`: directional derivatives along an
    /// orthonormal frame, each from a fourth-order central stencil on
    /// `s -> f(exp_x(s e_i))`.
    pub fn gradient_fd<F>(&self, f: F, x: &Point, h: f64) -> Result<TangentVec>
    where
        F: Fn(&Point) -> f64,
    {
        if !(h >= tol::MIN_STEP) {
            return Err(GeoError::StepTooSmall(h));
        }
        let mut grad = vec![0.0; self.coord_len()];
        for e in self.tangent_basis(x) {
            let at =
                |s: f64| f(&self.raw_point(unchecked_exp(self, &x.coords, &scale(&e.comps, s))));
            let d = (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h);
            grad = crate::linalg::axpy(&grad, d, &e.comps);
        }
        Ok(self.raw_tangent(x, grad))
    }
}
