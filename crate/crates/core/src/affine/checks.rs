//! Sampled property checkers for the linear-affine characterisation.

use rayon::prelude::*;
use serde::Serialize;

use super::{halfplane, AffineProbe};
use crate::error::{GeoError, Result};
use crate::poincare::gradient_hp;
use crate::sampling::Sampler;
use crate::space::{Point, SpaceSpec, TangentVec};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Holds,
    Violated,
}

/// Outcome of a sampled check: the largest residual, the sample that produced
/// it and the verdict against `tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub property: String,
    pub n: usize,
    pub max_residual: f64,
    pub worst_sample: Vec<Point>,
    pub verdict: Verdict,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    fn from_residuals(property: &str, tolerance: f64, samples: Vec<(Vec<Point>, f64)>) -> Self {
        let n = samples.len();
        let mut worst: Option<(Vec<Point>, f64)> = None;
        for (pts, r) in samples {
            // NaN counts as an unbounded residual.
            let r = if r.is_nan() { f64::INFINITY } else { r };
            if worst.as_ref().is_none_or(|(_, w)| r > *w) {
                worst = Some((pts, r));
            }
        }
        let (worst_sample, max_residual) = worst.unwrap_or((Vec::new(), 0.0));
        CheckReport {
            property: property.to_string(),
            n,
            max_residual,
            worst_sample,
            verdict: if max_residual > tolerance {
                Verdict::Violated
            } else {
                Verdict::Holds
            },
            tolerance,
            note: None,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

fn vec_norm_at(space: &SpaceSpec, a: &TangentVec, b: &TangentVec) -> f64 {
    let diff = crate::linalg::sub(&a.comps, &b.comps);
    space.inner_at(&a.base.coords, &diff, &diff).max(0.0).sqrt()
}

/// Residual `|P_{x,x0} u0 - P_{x,z} P_{z,x0} u0|_x` over sampled pairs `(z, x)`.
pub fn check_transport_commutation(
    probe: &AffineProbe,
    sampler: &Sampler,
    n: usize,
    tol: f64,
) -> CheckReport {
    let space = probe.space;
    let pairs = sampler.pairs(n);
    let samples: Vec<(Vec<Point>, f64)> = pairs
        .into_par_iter()
        .map(|(z, x)| {
            let r = (|| -> Result<f64> {
                let direct = probe.transport_field(&x)?;
                let via = space.transport_to(&probe.transport_field(&z)?, &x)?;
                Ok(vec_norm_at(&space, &direct, &via))
            })()
            .unwrap_or(f64::INFINITY);
            (vec![z, x], r)
        })
        .collect();
    CheckReport::from_residuals("transport_commutation", tol, samples)
}

/// Residual `|grad f0(x) - X0(x)|_x` over sampled points. The gradient is the
/// metric dual of central differences; for the standard half-plane probe the
/// analytic gradient of the closed form is checked too and the larger
/// residual is kept.
pub fn check_gradient_field(
    probe: &AffineProbe,
    sampler: &Sampler,
    n: usize,
    tol: f64,
) -> CheckReport {
    let space = probe.space;
    let analytic = probe.is_standard_halfplane().then(halfplane::f0_field);
    let samples: Vec<(Vec<Point>, f64)> = sampler
        .points(n)
        .into_par_iter()
        .map(|x| {
            let r = (|| -> Result<f64> {
                let field = probe.transport_field(&x)?;
                let fd = space.gradient_fd(|p| probe.f0_value(p), &x, tol::GRADIENT_STEP)?;
                let mut r = vec_norm_at(&space, &fd, &field);
                if let Some(f) = &analytic {
                    r = r.max(vec_norm_at(&space, &gradient_hp(f, &x)?, &field));
                }
                Ok(r)
            })()
            .unwrap_or(f64::INFINITY);
            (vec![x], r)
        })
        .collect();
    CheckReport::from_residuals("gradient_field", tol, samples)
}

/// Residual `|f(x) - f(x0) - <u0, log_{x0} x>|` with `u0` the gradient of `f` at `x0`.
pub fn check_affine_formula<F>(
    space: &SpaceSpec,
    f: F,
    x0: &Point,
    sampler: &Sampler,
    n: usize,
    tol: f64,
) -> Result<CheckReport>
where
    F: Fn(&Point) -> f64 + Sync,
{
    let u0 = space.gradient_fd(&f, x0, tol::GRADIENT_STEP)?;
    let f_x0 = f(x0);
    let samples: Vec<(Vec<Point>, f64)> = sampler
        .points(n)
        .into_par_iter()
        .map(|x| {
            let r = match space.log_map(x0, &x) {
                Ok(v) => (f(&x) - f_x0 - space.inner_at(&x0.coords, &u0.comps, &v.comps)).abs(),
                Err(_) => f64::INFINITY,
            };
            (vec![x], r)
        })
        .collect();
    let mut report = CheckReport::from_residuals("affine_formula", tol, samples);
    if space.norm(&u0) < 1e-12 {
        report.note = Some("zero gradient at x0".to_string());
    }
    Ok(report)
}

/// Second central difference of `t -> f(exp_x(t v))` at `t = 0`, i.e. `Hess f(v, v)`.
pub fn hessian_probe<F>(space: &SpaceSpec, f: F, x: &Point, v: &TangentVec, h: f64) -> Result<f64>
where
    F: Fn(&Point) -> f64,
{
    if !(h >= tol::MIN_STEP) {
        return Err(GeoError::StepTooSmall(h));
    }
    let fwd = space.exp_map(x, &v.scaled(h))?;
    let bwd = space.exp_map(x, &v.scaled(-h))?;
    Ok((f(&fwd) - 2.0 * f(x) + f(&bwd)) / (h * h))
}
