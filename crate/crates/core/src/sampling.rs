//! Seeded samplers. Every sample index owns its own ChaCha stream, so results
//! do not depend on evaluation order or thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{axpy, norm};
use crate::manifold::unchecked_exp;
use crate::space::{Point, SpaceKind, SpaceSpec, TangentVec};

/// RNG for sample `index` of the run seeded with `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform vector in the Euclidean unit ball of `R^dim`.
pub fn unit_ball<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = norm(&g);
        if n > 1e-300 {
            let r: f64 = rng.random::<f64>().powf(1.0 / dim as f64);
            return g.into_iter().map(|c| c * r / n).collect();
        }
    }
}

/// Tangent vector uniform (in normal coordinates) in the ball of radius `radius` at `x`.
pub fn tangent_in_ball<R: Rng>(
    rng: &mut R,
    space: &SpaceSpec,
    x: &Point,
    radius: f64,
) -> TangentVec {
    let coeffs = unit_ball(rng, space.dim());
    let mut comps = vec![0.0; space.coord_len()];
    for (c, e) in coeffs.iter().zip(space.tangent_basis(x)) {
        comps = axpy(&comps, c * radius, &e.comps);
    }
    space.raw_tangent(x, comps)
}

/// Point `exp_x(v)` with `v` uniform in the tangent ball of radius `radius`.
pub fn point_in_ball<R: Rng>(rng: &mut R, space: &SpaceSpec, x: &Point, radius: f64) -> Point {
    let v = tangent_in_ball(rng, space, x, radius);
    space.raw_point(unchecked_exp(space, &x.coords, &v.comps))
}

/// Default sampling radius of the exp-chart ball: `0.95 D_kappa / 2` for
/// positive curvature, `3 / sqrt(|kappa|)` for negative curvature and `3` on
/// flat space.
pub fn default_radius(space: &SpaceSpec) -> f64 {
    match space.kind() {
        SpaceKind::Sphere => 0.95 * space.diameter_bound() / 2.0,
        SpaceKind::Euclidean => 3.0,
        _ => 3.0 / space.kappa().abs().sqrt(),
    }
}

/// Source of sample points for the property checkers.
#[derive(Debug, Clone)]
pub enum Sampler {
    /// Seeded points uniform in the exp-chart ball around `center`.
    Ball {
        center: Point,
        radius: f64,
        seed: u64,
    },
    /// A fixed list, consumed in order.
    Points(Vec<Point>),
}

impl Sampler {
    pub fn ball(center: Point, radius: f64, seed: u64) -> Sampler {
        Sampler::Ball {
            center,
            radius,
            seed,
        }
    }

    /// Ball of the default radius around `center`.
    pub fn default_ball(center: Point, seed: u64) -> Sampler {
        let radius = default_radius(&center.space);
        Sampler::Ball {
            center,
            radius,
            seed,
        }
    }

    /// `n` points (a fixed list yields at most its own length).
    pub fn points(&self, n: usize) -> Vec<Point> {
        match self {
            Sampler::Ball {
                center,
                radius,
                seed,
            } => (0..n)
                .map(|i| {
                    point_in_ball(&mut stream(*seed, i as u64), &center.space, center, *radius)
                })
                .collect(),
            Sampler::Points(pts) => pts.iter().take(n).cloned().collect(),
        }
    }

    /// `n` point pairs (a fixed list is read as consecutive pairs).
    pub fn pairs(&self, n: usize) -> Vec<(Point, Point)> {
        match self {
            Sampler::Ball {
                center,
                radius,
                seed,
            } => (0..n)
                .map(|i| {
                    let mut rng = stream(*seed, i as u64);
                    let a = point_in_ball(&mut rng, &center.space, center, *radius);
                    let b = point_in_ball(&mut rng, &center.space, center, *radius);
                    (a, b)
                })
                .collect(),
            Sampler::Points(pts) => pts
                .chunks_exact(2)
                .take(n)
                .map(|c| (c[0].clone(), c[1].clone()))
                .collect(),
        }
    }
}
