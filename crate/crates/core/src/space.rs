//! Model spaces, points and tangent vectors.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::linalg::{dot, minkowski, norm, scale, sub};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Euclidean,
    Sphere,
    Hyperbolic,
    HalfPlane,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpaceKind::Euclidean => "euclidean",
            SpaceKind::Sphere => "sphere",
            SpaceKind::Hyperbolic => "hyperbolic",
            SpaceKind::HalfPlane => "halfplane",
        };
        f.write_str(s)
    }
}

/// A constant-curvature model space.
///
/// Charts: Euclidean `R^n` in its own coordinates; the sphere of curvature
/// `kappa > 0` as the radius `1/sqrt(kappa)` sphere in `R^(n+1)`; hyperbolic
/// space of curvature `kappa < 0` as the upper sheet of the hyperboloid
/// `<x, x>_L = 1/kappa` in Minkowski space (time coordinate last); and the
/// Poincare half-plane `{(t1, t2) : t2 > 0}` with metric `(dt1^2 + dt2^2) / t2^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpace")]
pub struct SpaceSpec {
    kind: SpaceKind,
    dim: usize,
    kappa: f64,
}

#[derive(Deserialize)]
struct RawSpace {
    kind: SpaceKind,
    dim: usize,
    kappa: f64,
}

impl TryFrom<RawSpace> for SpaceSpec {
    type Error = GeoError;

    fn try_from(raw: RawSpace) -> Result<Self> {
        SpaceSpec::new(raw.kind, raw.dim, raw.kappa)
    }
}

impl SpaceSpec {
    pub fn new(kind: SpaceKind, dim: usize, kappa: f64) -> Result<Self> {
        if dim == 0 {
            return Err(GeoError::InvalidSpace("dimension must be positive".into()));
        }
        if !kappa.is_finite() {
            return Err(GeoError::InvalidSpace("curvature must be finite".into()));
        }
        let ok = match kind {
            SpaceKind::Euclidean => kappa == 0.0,
            SpaceKind::Sphere => kappa > 0.0,
            SpaceKind::Hyperbolic => kappa < 0.0,
            SpaceKind::HalfPlane => dim == 2 && kappa == -1.0,
        };
        if !ok {
            return Err(GeoError::InvalidSpace(format!(
                "{kind} incompatible with dim={dim}, kappa={kappa}"
            )));
        }
        Ok(SpaceSpec { kind, dim, kappa })
    }

    pub fn euclidean(dim: usize) -> Result<Self> {
        Self::new(SpaceKind::Euclidean, dim, 0.0)
    }

    pub fn sphere(dim: usize, kappa: f64) -> Result<Self> {
        Self::new(SpaceKind::Sphere, dim, kappa)
    }

    pub fn hyperbolic(dim: usize, kappa: f64) -> Result<Self> {
        Self::new(SpaceKind::Hyperbolic, dim, kappa)
    }

    pub fn half_plane() -> Self {
        SpaceSpec {
            kind: SpaceKind::HalfPlane,
            dim: 2,
            kappa: -1.0,
        }
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// `D_kappa = pi / sqrt(kappa)` for positive curvature, `+inf` otherwise.
    pub fn diameter_bound(&self) -> f64 {
        if self.kappa > 0.0 {
            PI / self.kappa.sqrt()
        } else {
            f64::INFINITY
        }
    }

    /// Radius `1/sqrt(|kappa|)` of the embedded sphere or hyperboloid.
    pub(crate) fn radius(&self) -> f64 {
        1.0 / self.kappa.abs().sqrt()
    }

    /// Number of stored coordinates per point.
    pub fn coord_len(&self) -> usize {
        match self.kind {
            SpaceKind::Sphere | SpaceKind::Hyperbolic => self.dim + 1,
            _ => self.dim,
        }
    }

    /// Canonical base point: the origin, the "north pole" `(0, .., 0, R)`, or `(0, 1)`.
    pub fn origin(&self) -> Point {
        let mut coords = vec![0.0; self.coord_len()];
        match self.kind {
            SpaceKind::Euclidean => {}
            SpaceKind::Sphere | SpaceKind::Hyperbolic => {
                coords[self.dim] = self.radius();
            }
            SpaceKind::HalfPlane => coords[1] = 1.0,
        }
        Point {
            space: *self,
            coords,
        }
    }

    fn check_len(&self, got: usize) -> Result<()> {
        let expected = self.coord_len();
        if got != expected {
            return Err(GeoError::DimensionMismatch { expected, got });
        }
        Ok(())
    }

    /// Build a point, checking it lies on the model surface.
    pub fn point(&self, coords: Vec<f64>) -> Result<Point> {
        self.check_len(coords.len())?;
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeoError::InvalidPoint("non-finite coordinate".into()));
        }
        match self.kind {
            SpaceKind::Euclidean => {}
            SpaceKind::Sphere => {
                let r = self.radius();
                if ((norm(&coords) - r) / r).abs() > tol::SPHERE_RADIUS_REL {
                    return Err(GeoError::InvalidPoint(format!(
                        "|x| = {} but the sphere radius is {r}",
                        norm(&coords)
                    )));
                }
            }
            SpaceKind::Hyperbolic => {
                let target = 1.0 / self.kappa;
                let q = minkowski(&coords, &coords);
                if ((q - target) / target).abs() > tol::HYPERBOLOID_REL || coords[self.dim] <= 0.0 {
                    return Err(GeoError::InvalidPoint(format!(
                        "<x,x>_L = {q}, expected {target} on the upper sheet"
                    )));
                }
            }
            SpaceKind::HalfPlane => {
                if coords[1] <= 0.0 {
                    return Err(GeoError::InvalidPoint("half-plane needs t2 > 0".into()));
                }
            }
        }
        Ok(Point {
            space: *self,
            coords,
        })
    }

    /// Build a point after projecting the coordinates onto the model surface.
    ///
    /// Sphere coordinates are rescaled to the radius; hyperboloid input is read
    /// as the spatial part and the time coordinate recomputed (so both `n` and
    /// `n+1` coordinates are accepted).
    pub fn project_point(&self, coords: Vec<f64>) -> Result<Point> {
        match self.kind {
            SpaceKind::Sphere => {
                self.check_len(coords.len())?;
                let n = norm(&coords);
                if n == 0.0 || !n.is_finite() {
                    return Err(GeoError::InvalidPoint(
                        "cannot project the zero vector".into(),
                    ));
                }
                self.point(scale(&coords, self.radius() / n))
            }
            SpaceKind::Hyperbolic => {
                let mut spatial = coords;
                if spatial.len() == self.dim + 1 {
                    spatial.pop();
                }
                if spatial.len() != self.dim {
                    return Err(GeoError::DimensionMismatch {
                        expected: self.dim + 1,
                        got: spatial.len(),
                    });
                }
                let r = self.radius();
                let time = (r * r + dot(&spatial, &spatial)).sqrt();
                spatial.push(time);
                self.point(spatial)
            }
            _ => self.point(coords),
        }
    }

    /// Build a tangent vector at `base`, checking ambient orthogonality where relevant.
    pub fn tangent(&self, base: &Point, comps: Vec<f64>) -> Result<TangentVec> {
        self.check_len(comps.len())?;
        if base.space != *self {
            return Err(GeoError::InvalidTangent(
                "base point lives in another space".into(),
            ));
        }
        if comps.iter().any(|c| !c.is_finite()) {
            return Err(GeoError::InvalidTangent("non-finite component".into()));
        }
        let (ortho, scale_ref) = match self.kind {
            SpaceKind::Sphere => (dot(&base.coords, &comps), self.radius()),
            SpaceKind::Hyperbolic => (minkowski(&base.coords, &comps), norm(&base.coords)),
            _ => (0.0, 1.0),
        };
        if ortho.abs() > tol::TANGENT_ORTHO * norm(&comps) * scale_ref.max(1.0) {
            return Err(GeoError::InvalidTangent(format!(
                "not orthogonal to its base point (residual {ortho})"
            )));
        }
        Ok(TangentVec {
            base: base.clone(),
            comps,
        })
    }

    /// Build a tangent vector after projecting the components onto `T_base`.
    pub fn project_tangent(&self, base: &Point, comps: Vec<f64>) -> Result<TangentVec> {
        self.check_len(comps.len())?;
        let projected = match self.kind {
            SpaceKind::Sphere => {
                let x = &base.coords;
                let s = dot(x, &comps) / dot(x, x);
                sub(&comps, &scale(x, s))
            }
            SpaceKind::Hyperbolic => {
                let x = &base.coords;
                let s = minkowski(x, &comps) / minkowski(x, x);
                sub(&comps, &scale(x, s))
            }
            _ => comps,
        };
        self.tangent(base, projected)
    }

    /// The zero tangent vector at `base`.
    pub fn zero_tangent(&self, base: &Point) -> TangentVec {
        TangentVec {
            base: base.clone(),
            comps: vec![0.0; self.coord_len()],
        }
    }

    pub(crate) fn raw_point(&self, coords: Vec<f64>) -> Point {
        Point {
            space: *self,
            coords,
        }
    }

    pub(crate) fn raw_tangent(&self, base: &Point, comps: Vec<f64>) -> TangentVec {
        TangentVec {
            base: base.clone(),
            comps,
        }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(dim={}, kappa={})", self.kind, self.dim, self.kappa)
    }
}

/// A point of a model space in that space's chart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub space: SpaceSpec,
    pub coords: Vec<f64>,
}

impl Point {
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Coordinate-wise agreement within `tol * (1 + max|coord|)`.
    pub fn approx_eq(&self, other: &Point, tol: f64) -> bool {
        if self.space != other.space || self.coords.len() != other.coords.len() {
            return false;
        }
        let scale = 1.0 + crate::linalg::max_abs(&self.coords);
        crate::linalg::dist_inf(&self.coords, &other.coords) <= tol * scale
    }
}

/// A tangent vector together with its base point; components live in the
/// same chart as the base (ambient components for sphere and hyperboloid).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentVec {
    pub base: Point,
    pub comps: Vec<f64>,
}

impl TangentVec {
    pub fn comps(&self) -> &[f64] {
        &self.comps
    }

    pub fn scaled(&self, s: f64) -> TangentVec {
        TangentVec {
            base: self.base.clone(),
            comps: scale(&self.comps, s),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|&c| c == 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_sign_must_match_kind() {
        assert!(SpaceSpec::sphere(2, -1.0).is_err());
        assert!(SpaceSpec::hyperbolic(2, 1.0).is_err());
        assert!(SpaceSpec::new(SpaceKind::Euclidean, 3, 0.5).is_err());
        assert!(SpaceSpec::new(SpaceKind::HalfPlane, 3, -1.0).is_err());
        assert!(SpaceSpec::new(SpaceKind::HalfPlane, 2, -2.0).is_err());
        assert!(SpaceSpec::euclidean(0).is_err());
    }

    #[test]
    fn diameter_bound_values() {
        let s = SpaceSpec::sphere(2, 4.0).unwrap();
        assert!((s.diameter_bound() - PI / 2.0).abs() < 1e-15);
        assert!(SpaceSpec::half_plane().diameter_bound().is_infinite());
        assert!(SpaceSpec::euclidean(3)
            .unwrap()
            .diameter_bound()
            .is_infinite());
    }

    #[test]
    fn point_invariants_are_checked() {
        let s = SpaceSpec::sphere(2, 1.0).unwrap();
        assert!(s.point(vec![0.0, 0.0, 1.0]).is_ok());
        assert!(s.point(vec![0.0, 0.0, 1.1]).is_err());
        assert!(s.point(vec![0.0, 1.0]).is_err());
        let h = SpaceSpec::hyperbolic(2, -1.0).unwrap();
        assert!(h.point(vec![0.0, 0.0, 1.0]).is_ok());
        assert!(h.point(vec![0.0, 0.0, -1.0]).is_err());
        let hp = SpaceSpec::half_plane();
        assert!(hp.point(vec![0.0, -1.0]).is_err());
        assert!(hp.point(vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn projection_lands_on_surface() {
        let s = SpaceSpec::sphere(2, 4.0).unwrap();
        let p = s.project_point(vec![1.0, 1.0, 0.0]).unwrap();
        assert!((norm(&p.coords) - 0.5).abs() < 1e-15);
        let h = SpaceSpec::hyperbolic(3, -0.25).unwrap();
        let q = h.project_point(vec![1.0, 2.0, 0.5]).unwrap();
        assert!(((minkowski(&q.coords, &q.coords) + 4.0) / 4.0).abs() < 1e-12);
        let v = s.project_tangent(&p, vec![1.0, 0.0, 1.0]).unwrap();
        assert!(dot(&v.comps, &p.coords).abs() < 1e-15);
    }

    #[test]
    fn tangent_must_be_orthogonal() {
        let s = SpaceSpec::sphere(2, 1.0).unwrap();
        let n = s.origin();
        assert!(s.tangent(&n, vec![1.0, 0.0, 0.0]).is_ok());
        assert!(s.tangent(&n, vec![1.0, 0.0, 0.1]).is_err());
    }

    #[test]
    fn serde_roundtrip_validates() {
        let p = SpaceSpec::half_plane().point(vec![0.5, 0.5]).unwrap();
        let js = serde_json::to_string(&p).unwrap();
        assert!(js.contains("\"kind\":\"halfplane\""));
        let back: Point = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"space":{"kind":"sphere","dim":2,"kappa":-1.0},"coords":[0,0,1]}"#;
        assert!(serde_json::from_str::<Point>(bad).is_err());
    }
}
