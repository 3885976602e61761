//! Closed-form exp, log and transport on the Poincare half-plane.
//!
//! `exp` and transport conjugate the vertical geodesic `s -> i e^s` through
//! `i` by the elliptic rotation fixing `i`, then move `i` to the base point by
//! the affine isometry `z -> t1 + t2 z`. Transport along a geodesic is the
//! differential of the hyperbolic translation along it, i.e. multiplication
//! by the ratio of the Euclidean velocities at the two ends.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

struct Frame {
    base: Complex64,
    height: f64,
    len: f64,
    cos: f64,
    sin: f64,
}

impl Frame {
    fn new(x: &[f64], v: &[f64]) -> Frame {
        let height = x[1];
        let w = Complex64::new(v[0], v[1]) / height;
        let theta = 0.5 * (w.arg() - FRAC_PI_2);
        Frame {
            base: Complex64::new(x[0], 0.0),
            height,
            len: w.norm(),
            cos: theta.cos(),
            sin: theta.sin(),
        }
    }

    fn denom(&self, zeta: Complex64) -> Complex64 {
        -self.sin * zeta + self.cos
    }

    fn point(&self, t: f64) -> Complex64 {
        let zeta = Complex64::i() * (t * self.len).exp();
        let m = (self.cos * zeta + self.sin) / self.denom(zeta);
        self.base + self.height * m
    }

    /// Euclidean velocity of `t -> exp(x, t v)`.
    fn velocity(&self, t: f64) -> Complex64 {
        let zeta = Complex64::i() * (t * self.len).exp();
        let d = self.denom(zeta);
        self.height * zeta * self.len / (d * d)
    }

    /// Factor mapping vectors at `t = 0` to their transports at `t`.
    fn transport_factor(&self, t: f64) -> Complex64 {
        let zeta = Complex64::i() * (t * self.len).exp();
        let d = self.denom(zeta);
        let rot = Complex64::new(self.cos, self.sin);
        (t * self.len).exp() / (rot * rot * d * d)
    }
}

fn to_vec(z: Complex64) -> Vec<f64> {
    vec![z.re, z.im]
}

pub(super) fn exp(x: &[f64], v: &[f64]) -> Vec<f64> {
    if v[0] == 0.0 && v[1] == 0.0 {
        return x.to_vec();
    }
    to_vec(Frame::new(x, v).point(1.0))
}

pub(super) fn velocity(x: &[f64], v: &[f64], t: f64) -> Vec<f64> {
    if v[0] == 0.0 && v[1] == 0.0 {
        return vec![0.0, 0.0];
    }
    to_vec(Frame::new(x, v).velocity(t))
}

pub(super) fn transport(x: &[f64], v: &[f64], w: &[f64]) -> Vec<f64> {
    if v[0] == 0.0 && v[1] == 0.0 {
        return w.to_vec();
    }
    let f = Frame::new(x, v).transport_factor(1.0);
    to_vec(Complex64::new(w[0], w[1]) * f)
}

/// `d((t1,t2),(s1,s2)) = 2 asinh(|x - y| / (2 sqrt(t2 s2)))`.
pub(super) fn dist(x: &[f64], y: &[f64]) -> f64 {
    let chord = (x[0] - y[0]).hypot(x[1] - y[1]);
    2.0 * (chord / (2.0 * (x[1] * y[1]).sqrt())).asinh()
}

/// Logarithm at `y = (s1, s2)` of `x = (t1, t2)`.
///
/// Algebraically equal to the piecewise `b_xy`/`r_xy` expression, rewritten as
/// `d * s2 * (s2 (t1 - s1), Q) / |(s2 (t1 - s1), Q)|` with
/// `Q = ((t1 - s1)^2 + t2^2 - s2^2) / 2`, which has no branch at `t1 = s1`.
pub(super) fn log(y: &[f64], x: &[f64]) -> Vec<f64> {
    let (s1, s2) = (y[0], y[1]);
    let (t1, t2) = (x[0], x[1]);
    let delta = t1 - s1;
    let q = 0.5 * (delta * delta + (t2 - s2) * (t2 + s2));
    let dir = [s2 * delta, q];
    let n = dir[0].hypot(dir[1]);
    if n == 0.0 {
        return vec![0.0, 0.0];
    }
    let k = dist(y, x) * s2 / n;
    vec![k * dir[0], k * dir[1]]
}
