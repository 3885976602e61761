//! Upper sheet of the hyperboloid `<x, x>_L = -r^2`, time coordinate last.

use crate::linalg::{axpy, minkowski, scale};

fn mnorm(v: &[f64]) -> f64 {
    minkowski(v, v).max(0.0).sqrt()
}

pub(super) fn exp(r: f64, x: &[f64], v: &[f64]) -> Vec<f64> {
    let len = mnorm(v);
    if len == 0.0 {
        return x.to_vec();
    }
    let phi = len / r;
    let mut out = scale(x, phi.cosh());
    for (o, vi) in out.iter_mut().zip(v) {
        *o += r * phi.sinh() * vi / len;
    }
    out
}

pub(super) fn log(r: f64, x: &[f64], y: &[f64]) -> (Vec<f64>, f64) {
    let c = -minkowski(x, y) / (r * r);
    let w = axpy(y, -c, x);
    let wn = mnorm(&w);
    if wn == 0.0 {
        return (vec![0.0; x.len()], 0.0);
    }
    let d = r * (wn / r).asinh();
    (scale(&w, d / wn), d)
}

pub(super) fn dist(r: f64, x: &[f64], y: &[f64]) -> f64 {
    log(r, x, y).1
}

pub(super) fn transport(r: f64, x: &[f64], v: &[f64], w: &[f64]) -> Vec<f64> {
    let len = mnorm(v);
    if len == 0.0 {
        return w.to_vec();
    }
    let phi = len / r;
    let we = minkowski(w, v) / len;
    w.iter()
        .zip(v)
        .zip(x)
        .map(|((wi, vi), xi)| wi + we * ((phi.cosh() - 1.0) * vi / len + phi.sinh() * xi / r))
        .collect()
}

pub(super) fn project(r: f64, x: &[f64], u: &[f64]) -> Vec<f64> {
    axpy(u, minkowski(x, u) / (r * r), x)
}
