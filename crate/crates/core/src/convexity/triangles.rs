//! Geodesic triangles: side/angle data, the tangent decomposition of a chord
//! point at the opposite vertex, Euclidean comparison triangles and the
//! law-of-cosines comparison.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GeoError, Result};
use crate::linalg::solve2;
use crate::sampling::{point_in_ball, stream};
use crate::space::{Point, SpaceKind, SpaceSpec, TangentVec};

/// Near-degenerate triangles (smallest angle below this, in radians) are excluded from suites.
pub const MIN_ANGLE: f64 = 0.05;
/// Near-degenerate triangles (shortest side below this) are excluded from suites.
pub const MIN_SIDE: f64 = 1e-6;
/// Relative Gram-determinant floor below which two log vectors count as dependent.
pub const GRAM_DET_REL: f64 = 1e-14;

/// Angle between two tangent vectors at the same base, from the clamped cosine.
fn angle_between(space: &SpaceSpec, u: &TangentVec, v: &TangentVec) -> Result<f64> {
    let (nu, nv) = (space.norm(u), space.norm(v));
    if nu == 0.0 || nv == 0.0 {
        return Err(GeoError::DegenerateTriangle("coincident vertices".into()));
    }
    let c = space.inner(u, v)? / (nu * nv);
    Ok(c.clamp(-1.0, 1.0).acos())
}

fn perimeter_guard(space: &SpaceSpec, perimeter: f64) -> Result<()> {
    if perimeter >= 2.0 * space.diameter_bound() {
        return Err(GeoError::DegenerateTriangle(format!(
            "perimeter {perimeter} is not below 2 D_kappa"
        )));
    }
    Ok(())
}

/// A geodesic triangle with `sides[i] = d(p_{i+1}, p_{i-1})` and `angles[i]` at `p_i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleData {
    pub vertices: [Point; 3],
    pub sides: [f64; 3],
    pub angles: [f64; 3],
}

impl TriangleData {
    pub fn new(space: &SpaceSpec, p1: &Point, p2: &Point, p3: &Point) -> Result<Self> {
        let v = [p1.clone(), p2.clone(), p3.clone()];
        let mut sides = [0.0; 3];
        let mut angles = [0.0; 3];
        for i in 0..3 {
            let (next, prev) = (&v[(i + 1) % 3], &v[(i + 2) % 3]);
            sides[i] = space.distance(next, prev);
        }
        perimeter_guard(space, sides.iter().sum())?;
        for i in 0..3 {
            let (next, prev) = (&v[(i + 1) % 3], &v[(i + 2) % 3]);
            let a = space.log_map(&v[i], next)?;
            let b = space.log_map(&v[i], prev)?;
            angles[i] = angle_between(space, &a, &b)?;
        }
        Ok(TriangleData {
            vertices: v,
            sides,
            angles,
        })
    }

    pub fn perimeter(&self) -> f64 {
        self.sides.iter().sum()
    }

    pub fn min_angle(&self) -> f64 {
        self.angles.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn min_side(&self) -> f64 {
        self.sides.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn is_near_degenerate(&self) -> bool {
        self.min_angle() < MIN_ANGLE || self.min_side() < MIN_SIDE
    }
}

/// `log_y gamma_pq(t) = a_t log_y p + b_t log_y q + r` with `r` orthogonal to the span.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComboCoefficients {
    pub a_t: f64,
    pub b_t: f64,
    /// Norm of the component of `log_y gamma_pq(t)` orthogonal to `span{log_y p, log_y q}`.
    pub span_residual: f64,
}

/// Least-squares coefficients of `log_y gamma_pq(t)` in the basis `{log_y p, log_y q}`.
pub fn lemma42_coefficients(
    space: &SpaceSpec,
    y: &Point,
    p: &Point,
    q: &Point,
    t: f64,
) -> Result<ComboCoefficients> {
    perimeter_guard(
        space,
        space.distance(y, p) + space.distance(p, q) + space.distance(q, y),
    )?;
    let lp = space.log_map(y, p)?;
    let lq = space.log_map(y, q)?;
    let x = space.geodesic(p, q)?.eval(t);
    let lx = space.log_map(y, &x)?;
    let gpp = space.inner(&lp, &lp)?;
    let gqq = space.inner(&lq, &lq)?;
    let gpq = space.inner(&lp, &lq)?;
    let det = gpp * gqq - gpq * gpq;
    if !(det >= GRAM_DET_REL * gpp * gqq) || gpp == 0.0 || gqq == 0.0 {
        return Err(GeoError::DegenerateTriangle(
            "log vectors at y are dependent".into(),
        ));
    }
    let rhs = [space.inner(&lx, &lp)?, space.inner(&lx, &lq)?];
    let [a_t, b_t] = solve2(gpp, gpq, gpq, gqq, rhs)
        .ok_or_else(|| GeoError::DegenerateTriangle("singular Gram system".into()))?;
    let fitted = crate::linalg::add(
        &lp.comps.iter().map(|c| c * a_t).collect::<Vec<_>>(),
        &lq.comps.iter().map(|c| c * b_t).collect::<Vec<_>>(),
    );
    let r = crate::linalg::sub(&lx.comps, &fitted);
    let span_residual = space.inner_at(&y.coords, &r, &r).max(0.0).sqrt();
    Ok(ComboCoefficients {
        a_t,
        b_t,
        span_residual,
    })
}

/// Planar comparison of the point `x = gamma_pq(t)` seen from `y`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonTriangle {
    /// `y~ = 0`, `p~` on the positive first axis, `q~` in the upper half.
    pub y: [f64; 2],
    pub p: [f64; 2],
    pub q: [f64; 2],
    /// Point of `[p~, q~]` with `angle p~ y~ x~ = angle p y x`.
    pub x: [f64; 2],
    pub d_manifold: f64,
    pub d_plane: f64,
}

/// Planar triangle with `|y~p~| = d(y,p)`, `|y~q~| = d(y,q)` and the angle at `y`
/// preserved, together with the angular correspondent of `gamma_pq(t)`.
pub fn comparison_triangle(
    space: &SpaceSpec,
    y: &Point,
    p: &Point,
    q: &Point,
    t: f64,
) -> Result<ComparisonTriangle> {
    perimeter_guard(
        space,
        space.distance(y, p) + space.distance(p, q) + space.distance(q, y),
    )?;
    let lp = space.log_map(y, p)?;
    let lq = space.log_map(y, q)?;
    let x = space.geodesic(p, q)?.eval(t);
    let lx = space.log_map(y, &x)?;
    let alpha = angle_between(space, &lp, &lq)?;
    if !(1e-12..=std::f64::consts::PI - 1e-12).contains(&alpha) {
        return Err(GeoError::DegenerateTriangle("flat angle at y".into()));
    }
    let theta = if space.norm(&lx) == 0.0 {
        0.0
    } else {
        angle_between(space, &lp, &lx)?
    };
    let (dp, dq) = (space.norm(&lp), space.norm(&lq));
    let pt = [dp, 0.0];
    let qt = [dq * alpha.cos(), dq * alpha.sin()];
    // Ray y~ + s (cos theta, sin theta) meets p~ + lambda (q~ - p~).
    let dir = [theta.cos(), theta.sin()];
    let e = [qt[0] - pt[0], qt[1] - pt[1]];
    let [s, _lambda] = solve2(dir[0], -e[0], dir[1], -e[1], pt)
        .ok_or_else(|| GeoError::DegenerateTriangle("ray parallel to the opposite side".into()))?;
    let xt = [s * dir[0], s * dir[1]];
    Ok(ComparisonTriangle {
        y: [0.0, 0.0],
        p: pt,
        q: qt,
        x: xt,
        d_manifold: space.distance(y, &x),
        d_plane: xt[0].hypot(xt[1]),
    })
}

/// Law-of-cosines defects `l_i^2 - (l_{i-1}^2 + l_{i+1}^2 - 2 l_{i-1} l_{i+1} cos angle_i)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawOfCosinesReport {
    pub expressions: [f64; 3],
    /// Expected sign: -1 for positive curvature, +1 for negative, 0 for flat space.
    pub expected_sign: i8,
    /// Every expression strictly has the expected sign (flat space: always true).
    pub holds: bool,
}

pub fn law_of_cosines_check(
    space: &SpaceSpec,
    p1: &Point,
    p2: &Point,
    p3: &Point,
) -> Result<LawOfCosinesReport> {
    let tri = TriangleData::new(space, p1, p2, p3)?;
    if tri.min_side() == 0.0 {
        return Err(GeoError::DegenerateTriangle("coincident vertices".into()));
    }
    let l = tri.sides;
    let mut expressions = [0.0; 3];
    for i in 0..3 {
        let (a, b) = (l[(i + 2) % 3], l[(i + 1) % 3]);
        expressions[i] = l[i] * l[i] - (a * a + b * b - 2.0 * a * b * tri.angles[i].cos());
    }
    let expected_sign = curvature_sign(space);
    let holds = match expected_sign {
        0 => true,
        s => expressions.iter().all(|&e| e * f64::from(s) > 0.0),
    };
    Ok(LawOfCosinesReport {
        expressions,
        expected_sign,
        holds,
    })
}

fn curvature_sign(space: &SpaceSpec) -> i8 {
    match space.kind() {
        SpaceKind::Euclidean => 0,
        SpaceKind::Sphere => -1,
        SpaceKind::Hyperbolic | SpaceKind::HalfPlane => 1,
    }
}

/// Extremes observed over a seeded batch of random triangles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleSuiteStats {
    pub space: SpaceSpec,
    pub n_triangles: usize,
    pub seed: u64,
    /// Draws rejected as near-degenerate or too large.
    pub rejected: usize,
    pub min_a_t: f64,
    pub min_b_t: f64,
    pub min_ab_sum: f64,
    pub max_ab_sum: f64,
    pub max_span_residual: f64,
    /// Extremes of the law-of-cosines defect, signed so that positive means the
    /// curvature-appropriate strict inequality.
    pub min_cosine_margin: f64,
    pub max_abs_cosine_defect: f64,
    /// Minimum of the comparison slack `s (d_M - d_plane)`, `s = +1` for positive and
    /// `-1` for negative curvature; on flat space `-|d_M - d_plane|`.
    pub min_comparison_slack: f64,
}

struct TriangleSample {
    tri: TriangleData,
    t: f64,
    rejected: usize,
}

const MAX_TRIANGLE_DRAWS: usize = 10_000;

fn draw_triangle(
    space: &SpaceSpec,
    center: &Point,
    radius: f64,
    seed: u64,
    index: u64,
) -> Result<TriangleSample> {
    let mut rng = stream(seed, index);
    for rejected in 0..MAX_TRIANGLE_DRAWS {
        let v: Vec<Point> = (0..3)
            .map(|_| point_in_ball(&mut rng, space, center, radius))
            .collect();
        let t: f64 = rng.random();
        if !(t > 0.0 && t < 1.0) {
            continue;
        }
        match TriangleData::new(space, &v[0], &v[1], &v[2]) {
            Ok(tri) if !tri.is_near_degenerate() => return Ok(TriangleSample { tri, t, rejected }),
            _ => {}
        }
    }
    Err(GeoError::DegenerateTriangle(format!(
        "no admissible triangle in {MAX_TRIANGLE_DRAWS} draws"
    )))
}

/// Seeded random triangles of the model space, returned with a uniform chord parameter.
pub fn random_triangles(
    space: &SpaceSpec,
    n: usize,
    seed: u64,
) -> Result<Vec<(TriangleData, f64)>> {
    let center = space.origin();
    let radius = crate::sampling::default_radius(space);
    (0..n)
        .into_par_iter()
        .map(|i| draw_triangle(space, &center, radius, seed, i as u64).map(|s| (s.tri, s.t)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Runs the decomposition, comparison and law-of-cosines checks on `n` seeded triangles.
/// For each triangle `(p1, p2, p3)` the apex is `y = p1` and the chord is `[p2, p3]`.
pub fn triangle_suite(space: &SpaceSpec, n: usize, seed: u64) -> Result<TriangleSuiteStats> {
    let center = space.origin();
    let radius = crate::sampling::default_radius(space);
    let sign = f64::from(curvature_sign(space));
    struct Row {
        rejected: usize,
        combo: ComboCoefficients,
        cos: [f64; 3],
        slack: f64,
    }
    let rows: Vec<Result<Row>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let s = draw_triangle(space, &center, radius, seed, i as u64)?;
            let [y, p, q] = &s.tri.vertices;
            let combo = lemma42_coefficients(space, y, p, q, s.t)?;
            let cos = law_of_cosines_check(space, y, p, q)?.expressions;
            let cmp = comparison_triangle(space, y, p, q, s.t)?;
            let diff = cmp.d_manifold - cmp.d_plane;
            let slack = if sign == 0.0 {
                -diff.abs()
            } else {
                -sign * diff
            };
            Ok(Row {
                rejected: s.rejected,
                combo,
                cos,
                slack,
            })
        })
        .collect();
    let mut stats = TriangleSuiteStats {
        space: *space,
        n_triangles: n,
        seed,
        rejected: 0,
        min_a_t: f64::INFINITY,
        min_b_t: f64::INFINITY,
        min_ab_sum: f64::INFINITY,
        max_ab_sum: f64::NEG_INFINITY,
        max_span_residual: 0.0,
        min_cosine_margin: f64::INFINITY,
        max_abs_cosine_defect: 0.0,
        min_comparison_slack: f64::INFINITY,
    };
    for row in rows {
        let row = row?;
        stats.rejected += row.rejected;
        stats.min_a_t = stats.min_a_t.min(row.combo.a_t);
        stats.min_b_t = stats.min_b_t.min(row.combo.b_t);
        let sum = row.combo.a_t + row.combo.b_t;
        stats.min_ab_sum = stats.min_ab_sum.min(sum);
        stats.max_ab_sum = stats.max_ab_sum.max(sum);
        stats.max_span_residual = stats.max_span_residual.max(row.combo.span_residual);
        for e in row.cos {
            stats.min_cosine_margin = stats.min_cosine_margin.min(sign * e);
            stats.max_abs_cosine_defect = stats.max_abs_cosine_defect.max(e.abs());
        }
        stats.min_comparison_slack = stats.min_comparison_slack.min(row.slack);
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn hp(t1: f64, t2: f64) -> Point {
        SpaceSpec::half_plane().point(vec![t1, t2]).unwrap()
    }

    #[test]
    fn euclidean_coefficients_are_barycentric() {
        let s = SpaceSpec::euclidean(3).unwrap();
        let y = s.point(vec![0.1, 0.2, 0.3]).unwrap();
        let p = s.point(vec![1.0, -0.5, 2.0]).unwrap();
        let q = s.point(vec![-1.0, 1.5, 0.5]).unwrap();
        let c = lemma42_coefficients(&s, &y, &p, &q, 0.3).unwrap();
        assert!((c.a_t - 0.7).abs() < 1e-12 && (c.b_t - 0.3).abs() < 1e-12);
        assert!((c.a_t + c.b_t - 1.0).abs() < 1e-12);
        assert!(c.span_residual < 1e-12);
    }

    #[test]
    fn octant_coefficients() {
        let s = SpaceSpec::sphere(2, 1.0).unwrap();
        let y = s.point(vec![0.0, 0.0, 1.0]).unwrap();
        let p = s.point(vec![1.0, 0.0, 0.0]).unwrap();
        let q = s.point(vec![0.0, 1.0, 0.0]).unwrap();
        let c = lemma42_coefficients(&s, &y, &p, &q, 0.5).unwrap();
        assert!((c.a_t - c.b_t).abs() < 1e-12);
        // The midpoint (1,1,0)/sqrt 2 lies at distance pi/2 along the diagonal direction.
        assert!(
            (c.a_t - 1.0 / std::f64::consts::SQRT_2).abs() < 1e-12,
            "{c:?}"
        );
        assert!(c.a_t + c.b_t >= 1.0);
    }

    #[test]
    fn halfplane_coefficients_sum_at_most_one() {
        let h = SpaceSpec::half_plane();
        let c =
            lemma42_coefficients(&h, &hp(0.0, 1.0), &hp(0.5, 0.5), &hp(-0.5, 0.5), 0.5).unwrap();
        assert!(c.a_t > 0.0 && c.b_t > 0.0);
        assert!(c.a_t + c.b_t <= 1.0, "{c:?}");
        assert!(c.span_residual < 1e-12);
    }

    #[test]
    fn dependent_logs_are_degenerate() {
        let s = SpaceSpec::euclidean(2).unwrap();
        let y = s.origin();
        let p = s.point(vec![1.0, 0.0]).unwrap();
        let q = s.point(vec![2.0, 0.0]).unwrap();
        assert!(matches!(
            lemma42_coefficients(&s, &y, &p, &q, 0.5),
            Err(GeoError::DegenerateTriangle(_))
        ));
    }

    #[test]
    fn octant_law_of_cosines() {
        let s = SpaceSpec::sphere(2, 1.0).unwrap();
        let a = s.point(vec![1.0, 0.0, 0.0]).unwrap();
        let b = s.point(vec![0.0, 1.0, 0.0]).unwrap();
        let c = s.point(vec![0.0, 0.0, 1.0]).unwrap();
        let tri = TriangleData::new(&s, &a, &b, &c).unwrap();
        for ang in tri.angles {
            assert!((ang - FRAC_PI_2).abs() < 1e-12);
        }
        let r = law_of_cosines_check(&s, &a, &b, &c).unwrap();
        assert!(r.holds);
        for e in r.expressions {
            assert!((e + FRAC_PI_2 * FRAC_PI_2).abs() < 1e-10, "{e}");
        }
    }

    #[test]
    fn flat_and_hyperbolic_law_of_cosines() {
        let e = SpaceSpec::euclidean(2).unwrap();
        let pts: Vec<Point> = [[0.0, 0.0], [3.0, 0.5], [1.0, 2.0]]
            .iter()
            .map(|c| e.point(c.to_vec()).unwrap())
            .collect();
        let r = law_of_cosines_check(&e, &pts[0], &pts[1], &pts[2]).unwrap();
        assert!(r.expressions.iter().all(|x| x.abs() < 1e-10));

        let h = SpaceSpec::half_plane();
        let r = law_of_cosines_check(&h, &hp(0.0, 1.0), &hp(2.0, 1.0), &hp(1.0, 3.0)).unwrap();
        assert!(r.holds && r.expressions.iter().all(|&x| x > 0.0), "{r:?}");
    }

    #[test]
    fn comparison_examples() {
        let e = SpaceSpec::euclidean(2).unwrap();
        let y = e.origin();
        let p = e.point(vec![2.0, 0.3]).unwrap();
        let q = e.point(vec![-0.5, 1.7]).unwrap();
        let c = comparison_triangle(&e, &y, &p, &q, 0.4).unwrap();
        assert!((c.d_manifold - c.d_plane).abs() < 1e-12);

        let h = SpaceSpec::half_plane();
        let c = comparison_triangle(&h, &hp(0.0, 1.0), &hp(2.0, 1.0), &hp(1.0, 3.0), 0.5).unwrap();
        assert!(c.d_manifold <= c.d_plane);

        let s = SpaceSpec::sphere(2, 1.0).unwrap();
        let y = s.point(vec![0.0, 0.0, 1.0]).unwrap();
        let p = s.point(vec![1.0, 0.0, 0.0]).unwrap();
        let q = s.point(vec![0.0, 1.0, 0.0]).unwrap();
        let c = comparison_triangle(&s, &y, &p, &q, 0.5).unwrap();
        assert!(c.d_manifold >= c.d_plane);
    }

    #[test]
    fn perimeter_guard_rejects_large_spherical_triangles() {
        let s = SpaceSpec::sphere(2, 1.0).unwrap();
        let a = s.point(vec![1.0, 0.0, 0.0]).unwrap();
        let b = s.project_point(vec![-0.5, 0.866, 0.0]).unwrap();
        let c = s.project_point(vec![-0.5, -0.866, 0.0]).unwrap();
        assert!(matches!(
            TriangleData::new(&s, &a, &b, &c),
            Err(GeoError::DegenerateTriangle(_))
        ));
    }

    #[test]
    fn suites_have_curvature_signs() {
        let s = triangle_suite(&SpaceSpec::sphere(2, 1.0).unwrap(), 200, 1).unwrap();
        assert!(
            s.min_ab_sum >= 1.0 - 1e-9 && s.min_cosine_margin > 1e-10,
            "{s:?}"
        );
        let h = triangle_suite(&SpaceSpec::half_plane(), 200, 1).unwrap();
        assert!(
            h.max_ab_sum <= 1.0 + 1e-9 && h.min_cosine_margin > 1e-10,
            "{h:?}"
        );
        let e = triangle_suite(&SpaceSpec::euclidean(2).unwrap(), 200, 1).unwrap();
        assert!(
            (e.min_ab_sum - 1.0).abs() < 1e-10 && (e.max_ab_sum - 1.0).abs() < 1e-10,
            "{e:?}"
        );
        for st in [&s, &h, &e] {
            assert!(st.min_a_t > 0.0 && st.min_b_t > 0.0 && st.max_span_residual < 1e-8);
            assert!(st.min_comparison_slack >= -1e-10, "{st:?}");
        }
    }
}
