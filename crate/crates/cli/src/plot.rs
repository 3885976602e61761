//! Level-set plots of f0 on a 2-D chart: grid samples, marching-squares contour,
//! axis geodesic and witness chord, rendered as CSV rows or a static SVG.

use std::fmt::Write as _;

use geoaffine_core::affine::AffineProbe;
use geoaffine_core::convexity::{necessity_construction, reference_chord, sublevel_membership};
use geoaffine_core::{GeoError, Point, SpaceKind, SpaceSpec};
use serde::Serialize;

use crate::output::fmt12;

/// Chart of a 2-D space used for plotting.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    /// Natural coordinates (Euclidean plane, half-plane).
    Identity,
    /// Stereographic projection from the pole opposite `(0, 0, R)`.
    Stereographic,
    /// Spatial coordinates of the hyperboloid.
    Spatial,
}

impl Chart {
    pub fn for_space(space: &SpaceSpec) -> Result<Chart, GeoError> {
        if space.dim() != 2 {
            return Err(GeoError::UnsupportedDimension(space.dim()));
        }
        Ok(match space.kind() {
            SpaceKind::Euclidean | SpaceKind::HalfPlane => Chart::Identity,
            SpaceKind::Sphere => Chart::Stereographic,
            SpaceKind::Hyperbolic => Chart::Spatial,
        })
    }

    pub fn default_window(space: &SpaceSpec) -> [f64; 4] {
        match space.kind() {
            SpaceKind::HalfPlane => [-1.5, 1.5, 0.0, 2.0],
            _ => [-1.5, 1.5, -1.5, 1.5],
        }
    }

    fn to_point(self, space: &SpaceSpec, a: f64, b: f64) -> Option<Point> {
        match self {
            Chart::Identity => space.point(vec![a, b]).ok(),
            Chart::Stereographic => {
                let r = 1.0 / space.kappa().sqrt();
                let rho2 = a * a + b * b;
                let d = 1.0 + rho2;
                space
                    .project_point(vec![r * 2.0 * a / d, r * 2.0 * b / d, r * (1.0 - rho2) / d])
                    .ok()
            }
            Chart::Spatial => space.project_point(vec![a, b]).ok(),
        }
    }

    fn coords_of(self, space: &SpaceSpec, x: &Point) -> [f64; 2] {
        let c = &x.coords;
        match self {
            Chart::Identity | Chart::Spatial => [c[0], c[1]],
            Chart::Stereographic => {
                let r = 1.0 / space.kappa().sqrt();
                [c[0] / (r + c[2]), c[1] / (r + c[2])]
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelPlot {
    pub chart: Chart,
    pub c: f64,
    pub window: [f64; 4],
    pub grid: usize,
    #[serde(skip)]
    pub xs: Vec<f64>,
    #[serde(skip)]
    pub ys: Vec<f64>,
    /// `values[j][i] = f0(xs[i], ys[j])`: `inf` outside the domain of f0, `nan` off the chart.
    #[serde(skip)]
    pub values: Vec<Vec<f64>>,
    pub contour: Vec<[[f64; 2]; 2]>,
    pub axis: Vec<[f64; 2]>,
    pub chord: Option<Vec<[f64; 2]>>,
    pub x0: [f64; 2],
}

fn polyline(chart: Chart, space: &SpaceSpec, pts: impl Iterator<Item = Point>) -> Vec<[f64; 2]> {
    pts.map(|p| chart.coords_of(space, &p)).collect()
}

/// Evaluates the plot data for `probe` at level `c`.
pub fn level_plot(
    probe: &AffineProbe,
    c: f64,
    window: [f64; 4],
    grid: usize,
) -> Result<LevelPlot, GeoError> {
    let space = probe.space;
    let chart = Chart::for_space(&space)?;
    let n = grid.max(2);
    let [x_lo, x_hi, y_lo, y_hi] = window;
    let xs: Vec<f64> = (0..=n)
        .map(|i| x_lo + (x_hi - x_lo) * i as f64 / n as f64)
        .collect();
    let ys: Vec<f64> = (0..=n)
        .map(|j| y_lo + (y_hi - y_lo) * j as f64 / n as f64)
        .collect();
    let values: Vec<Vec<f64>> = ys
        .iter()
        .map(|&y| {
            xs.iter()
                .map(|&x| {
                    chart
                        .to_point(&space, x, y)
                        .map_or(f64::NAN, |p| probe.f0_value(&p))
                })
                .collect()
        })
        .collect();
    // Edges leaving the domain of f0 are cut where f0 becomes infinite.
    let domain_edge = |a: [f64; 2], b: [f64; 2]| {
        let finite = |p: [f64; 2]| {
            chart
                .to_point(&space, p[0], p[1])
                .is_some_and(|x| probe.f0_value(&x).is_finite())
        };
        let (mut inside, mut outside) = if finite(a) { (a, b) } else { (b, a) };
        for _ in 0..48 {
            let mid = [
                0.5 * (inside[0] + outside[0]),
                0.5 * (inside[1] + outside[1]),
            ];
            if finite(mid) {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        inside
    };
    let contour = marching_squares(&xs, &ys, &values, c, domain_edge);

    let reach = if space.kind() == SpaceKind::Sphere {
        probe.domain_radius() * 0.999
    } else {
        3.0 / space.kappa().abs().max(1.0).sqrt()
    };
    let axis = polyline(
        chart,
        &space,
        (0..=200).filter_map(|k| {
            probe
                .axis_point(-reach + 2.0 * reach * k as f64 / 200.0)
                .ok()
        }),
    );

    let pair = if space.kind() == SpaceKind::HalfPlane {
        let (p, q) = reference_chord();
        (sublevel_membership(probe, c, &p) && sublevel_membership(probe, c, &q))
            .then_some((p, q))
            .or_else(|| necessity_construction(probe, c))
    } else {
        necessity_construction(probe, c)
    };
    let chord = pair.and_then(|(p, q)| {
        let seg = space.geodesic(&p, &q).ok()?;
        Some(polyline(
            chart,
            &space,
            (0..=100).map(|k| seg.eval(k as f64 / 100.0)),
        ))
    });

    Ok(LevelPlot {
        chart,
        c,
        window,
        grid: n,
        x0: chart.coords_of(&space, &probe.x0),
        xs,
        ys,
        values,
        contour,
        axis,
        chord,
    })
}

/// Segments of the boundary of `{g <= c}` by marching squares. `+inf` samples
/// count as outside the set, so the contour closes along the domain edge;
/// cells touching a `nan` sample are skipped.
/// `domain_edge(a, b)` locates the domain boundary on an edge with one infinite end.
pub fn marching_squares<E>(
    xs: &[f64],
    ys: &[f64],
    values: &[Vec<f64>],
    c: f64,
    domain_edge: E,
) -> Vec<[[f64; 2]; 2]>
where
    E: Fn([f64; 2], [f64; 2]) -> [f64; 2],
{
    let mut segs = Vec::new();
    for j in 0..ys.len().saturating_sub(1) {
        for i in 0..xs.len().saturating_sub(1) {
            // Corners counter-clockwise from bottom-left.
            let corners = [
                ([xs[i], ys[j]], values[j][i]),
                ([xs[i + 1], ys[j]], values[j][i + 1]),
                ([xs[i + 1], ys[j + 1]], values[j + 1][i + 1]),
                ([xs[i], ys[j + 1]], values[j + 1][i]),
            ];
            if corners.iter().any(|(_, v)| v.is_nan()) {
                continue;
            }
            let mut crossings = Vec::with_capacity(4);
            for e in 0..4 {
                let (pa, va) = corners[e];
                let (pb, vb) = corners[(e + 1) % 4];
                if (va <= c) != (vb <= c) {
                    if va.is_infinite() || vb.is_infinite() {
                        crossings.push(domain_edge(pa, pb));
                    } else {
                        let s = (c - va) / (vb - va);
                        crossings.push([pa[0] + s * (pb[0] - pa[0]), pa[1] + s * (pb[1] - pa[1])]);
                    }
                }
            }
            match crossings.len() {
                2 => segs.push([crossings[0], crossings[1]]),
                4 => {
                    // Saddle: pair the crossings by the cell-centre value.
                    let centre = corners.iter().map(|(_, v)| v).sum::<f64>() / 4.0;
                    if (centre <= c) == (corners[0].1 <= c) {
                        segs.push([crossings[0], crossings[3]]);
                        segs.push([crossings[1], crossings[2]]);
                    } else {
                        segs.push([crossings[0], crossings[1]]);
                        segs.push([crossings[2], crossings[3]]);
                    }
                }
                _ => {}
            }
        }
    }
    segs
}

impl LevelPlot {
    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = Vec::with_capacity(self.xs.len() * self.ys.len());
        for (j, &y) in self.ys.iter().enumerate() {
            for (i, &x) in self.xs.iter().enumerate() {
                rows.push(vec![fmt12(x), fmt12(y), fmt12(self.values[j][i])]);
            }
        }
        rows
    }

    pub fn svg(&self, title: &str) -> String {
        const W: f64 = 640.0;
        const M: f64 = 40.0;
        let [x_lo, x_hi, y_lo, y_hi] = self.window;
        let h = W * (y_hi - y_lo) / (x_hi - x_lo);
        let px = |p: [f64; 2]| {
            (
                M + (p[0] - x_lo) / (x_hi - x_lo) * W,
                M + (y_hi - p[1]) / (y_hi - y_lo) * h,
            )
        };
        let inside = |p: &[f64; 2]| p[0] >= x_lo && p[0] <= x_hi && p[1] >= y_lo && p[1] <= y_hi;
        let mut s = String::new();
        let (tw, th) = (W + 2.0 * M, h + 2.0 * M);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{tw:.0}" height="{th:.0}" viewBox="0 0 {tw:.0} {th:.0}">"#
        );
        let _ = writeln!(
            s,
            r##"<rect x="0" y="0" width="{tw:.0}" height="{th:.0}" fill="#ffffff"/>"##
        );
        let _ = writeln!(
            s,
            r##"<rect x="{M}" y="{M}" width="{W:.0}" height="{h:.1}" fill="none" stroke="#888888"/>"##
        );
        let mut d = String::new();
        for [a, b] in &self.contour {
            let (ax, ay) = px(*a);
            let (bx, by) = px(*b);
            let _ = write!(d, "M{ax:.2} {ay:.2}L{bx:.2} {by:.2}");
        }
        let _ = writeln!(
            s,
            r##"<path d="{d}" stroke="#1f4e9c" stroke-width="1.5" fill="none"/>"##
        );
        let line = |pts: &[[f64; 2]]| {
            let mut d = String::new();
            let mut pen = false;
            for p in pts {
                if !inside(p) {
                    pen = false;
                    continue;
                }
                let (x, y) = px(*p);
                let _ = write!(d, "{}{x:.2} {y:.2}", if pen { "L" } else { "M" });
                pen = true;
            }
            d
        };
        let _ = writeln!(
            s,
            r##"<path d="{}" stroke="#777777" stroke-dasharray="5 4" fill="none"/>"##,
            line(&self.axis)
        );
        if let Some(chord) = &self.chord {
            let _ = writeln!(
                s,
                r##"<path d="{}" stroke="#c0392b" stroke-width="2" fill="none"/>"##,
                line(chord)
            );
            for p in [chord.first(), chord.last()]
                .into_iter()
                .flatten()
                .filter(|p| inside(p))
            {
                let (x, y) = px(*p);
                let _ = writeln!(
                    s,
                    r##"<circle cx="{x:.2}" cy="{y:.2}" r="3.5" fill="#c0392b"/>"##
                );
            }
        }
        if inside(&self.x0) {
            let (x, y) = px(self.x0);
            let _ = writeln!(
                s,
                r##"<circle cx="{x:.2}" cy="{y:.2}" r="3.5" fill="#000000"/>"##
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">x0</text>"#,
                x + 6.0,
                y - 6.0
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{M}" y="{:.0}" font-family="sans-serif" font-size="14">{title}  c = {}</text>"#,
            M - 14.0,
            fmt12(self.c)
        );
        s.push_str("</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contour_of_a_linear_field() {
        let xs = [0.0, 1.0, 2.0];
        let ys = [0.0, 1.0];
        let values = vec![vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 2.0]];
        let segs = marching_squares(&xs, &ys, &values, 0.5, |a, _| a);
        assert_eq!(segs.len(), 1);
        assert!((segs[0][0][0] - 0.5).abs() < 1e-15 && (segs[0][1][0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn halfplane_contour_separates_the_reference_chord() {
        let probe = AffineProbe::standard_halfplane();
        let plot = level_plot(&probe, -0.4, Chart::default_window(&probe.space), 60).unwrap();
        assert!(!plot.contour.is_empty());
        let chord = plot.chord.unwrap();
        assert_eq!(chord[0], [0.5, 0.5]);
        // The t2 = 0 row is off the chart and contributes no segments.
        assert!(plot.contour.iter().all(|s| s[0][1] > 0.0 && s[1][1] > 0.0));
    }

    #[test]
    fn sphere_contour_is_closed_inside_the_cap() {
        let probe = AffineProbe::unit_at_origin(SpaceSpec::sphere(2, 1.0).unwrap());
        let plot = level_plot(&probe, 0.5, Chart::default_window(&probe.space), 80).unwrap();
        // Every segment endpoint is shared with another segment.
        let key = |p: [f64; 2]| ((p[0] * 1e9).round() as i64, (p[1] * 1e9).round() as i64);
        let mut degree = std::collections::HashMap::new();
        for s in &plot.contour {
            for p in s {
                *degree.entry(key(*p)).or_insert(0) += 1;
            }
        }
        assert!(degree.values().all(|&d| d % 2 == 0));
        // The equator projects to the unit circle; the contour stays within it.
        assert!(plot
            .contour
            .iter()
            .flatten()
            .all(|p| p[0].hypot(p[1]) <= 1.0 + 1e-9));
    }

    #[test]
    fn three_dimensional_spaces_are_rejected() {
        let probe = AffineProbe::unit_at_origin(SpaceSpec::sphere(3, 1.0).unwrap());
        assert_eq!(
            level_plot(&probe, 0.5, [-1.0, 1.0, -1.0, 1.0], 10).unwrap_err(),
            GeoError::UnsupportedDimension(3)
        );
    }
}
