//! Small dense-vector helpers on `f64` slices.

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Minkowski product with the time-like coordinate last: `sum a_i b_i - a_n b_n`.
pub fn minkowski(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() - 1;
    dot(&a[..n], &b[..n]) - a[n] * b[n]
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `a + s * b`
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn dist_inf(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &[f64]) -> f64 {
    a.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

/// Inverse hyperbolic tangent as `ln((1+u)/(1-u)) / 2`, with the argument
/// clamped to `|u| <= 1 - 1e-15`.
pub fn artanh(u: f64) -> f64 {
    let lim = 1.0 - 1e-15;
    let u = u.clamp(-lim, lim);
    0.5 * ((1.0 + u) / (1.0 - u)).ln()
}

/// Solve the 2x2 system `[[a, b], [c, d]] x = rhs` by Cramer's rule.
pub fn solve2(a: f64, b: f64, c: f64, d: f64, rhs: [f64; 2]) -> Option<[f64; 2]> {
    let det = a * d - b * c;
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    Some([
        (rhs[0] * d - b * rhs[1]) / det,
        (a * rhs[1] - c * rhs[0]) / det,
    ])
}
