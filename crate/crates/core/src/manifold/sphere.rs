//! Radius-`r` sphere embedded in `R^(n+1)`.

use crate::linalg::{axpy, dot, norm, scale};

pub(super) fn exp(r: f64, x: &[f64], v: &[f64]) -> Vec<f64> {
    let len = norm(v);
    if len == 0.0 {
        return x.to_vec();
    }
    let phi = len / r;
    let mut out = scale(x, phi.cos());
    for (o, vi) in out.iter_mut().zip(v) {
        *o += r * phi.sin() * vi / len;
    }
    out
}

/// Returns `(log_x y, d(x, y))`; the log is `None` at the antipode.
pub(super) fn log(r: f64, x: &[f64], y: &[f64]) -> (Option<Vec<f64>>, f64) {
    let c = dot(x, y) / (r * r);
    let w = axpy(y, -c, x);
    let wn = norm(w.as_slice());
    let theta = wn.atan2(c * r);
    let d = r * theta;
    if wn == 0.0 {
        return if c > 0.0 {
            (Some(vec![0.0; x.len()]), 0.0)
        } else {
            (None, d)
        };
    }
    (Some(scale(&w, d / wn)), d)
}

pub(super) fn dist(r: f64, x: &[f64], y: &[f64]) -> f64 {
    log(r, x, y).1
}

/// Transport of `w` from `x` along `t -> exp(x, t v)` to `t = 1`.
pub(super) fn transport(r: f64, x: &[f64], v: &[f64], w: &[f64]) -> Vec<f64> {
    let len = norm(v);
    if len == 0.0 {
        return w.to_vec();
    }
    let phi = len / r;
    let we = dot(w, v) / len;
    w.iter()
        .zip(v)
        .zip(x)
        .map(|((wi, vi), xi)| wi + we * ((phi.cos() - 1.0) * vi / len - phi.sin() * xi / r))
        .collect()
}

pub(super) fn project(x: &[f64], u: &[f64]) -> Vec<f64> {
    let s = dot(x, u) / dot(x, x);
    axpy(u, -s, x)
}
