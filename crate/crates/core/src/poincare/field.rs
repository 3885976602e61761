//! Coordinate fields on the half-plane, optionally carrying analytic partials.

use std::fmt;
use std::sync::Arc;

type Value2 = Arc<dyn Fn(f64, f64) -> [f64; 2] + Send + Sync>;
type Jacobian2 = Arc<dyn Fn(f64, f64) -> [[f64; 2]; 2] + Send + Sync>;
type Scalar = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Step of the central differences used when a field has no analytic partials.
pub const PARTIALS_FD_STEP: f64 = 1e-5;

/// A vector field `(X^1, X^2)` in the natural coordinates of the half-plane.
///
/// The optional Jacobian is indexed `jac[k][j] = dX^k / dt_j`.
#[derive(Clone)]
pub struct VectorField2 {
    value: Value2,
    jacobian: Option<Jacobian2>,
}

impl fmt::Debug for VectorField2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VectorField2")
            .field("analytic_partials", &self.jacobian.is_some())
            .finish()
    }
}

impl VectorField2 {
    pub fn new<F>(value: F) -> Self
    where
        F: Fn(f64, f64) -> [f64; 2] + Send + Sync + 'static,
    {
        VectorField2 {
            value: Arc::new(value),
            jacobian: None,
        }
    }

    pub fn with_jacobian<F, J>(value: F, jacobian: J) -> Self
    where
        F: Fn(f64, f64) -> [f64; 2] + Send + Sync + 'static,
        J: Fn(f64, f64) -> [[f64; 2]; 2] + Send + Sync + 'static,
    {
        VectorField2 {
            value: Arc::new(value),
            jacobian: Some(Arc::new(jacobian)),
        }
    }

    /// The field with constant components `(c1, c2)`.
    pub fn constant(c1: f64, c2: f64) -> Self {
        Self::with_jacobian(move |_, _| [c1, c2], |_, _| [[0.0; 2]; 2])
    }

    /// The coordinate field `d/dt_{i+1}`.
    pub fn coordinate(i: usize) -> Self {
        assert!(i < 2, "coordinate index out of range");
        if i == 0 {
            Self::constant(1.0, 0.0)
        } else {
            Self::constant(0.0, 1.0)
        }
    }

    pub fn eval(&self, t1: f64, t2: f64) -> [f64; 2] {
        (self.value)(t1, t2)
    }

    pub fn has_partials(&self) -> bool {
        self.jacobian.is_some()
    }

    pub fn jacobian(&self, t1: f64, t2: f64) -> Option<[[f64; 2]; 2]> {
        self.jacobian.as_ref().map(|j| j(t1, t2))
    }

    /// Analytic Jacobian when present, central differences otherwise.
    pub fn jacobian_or_fd(&self, t1: f64, t2: f64) -> [[f64; 2]; 2] {
        if let Some(j) = self.jacobian(t1, t2) {
            return j;
        }
        let h = PARTIALS_FD_STEP;
        let d1 = {
            let (p, m) = (self.eval(t1 + h, t2), self.eval(t1 - h, t2));
            [(p[0] - m[0]) / (2.0 * h), (p[1] - m[1]) / (2.0 * h)]
        };
        let h2 = h * t2.min(1.0);
        let d2 = {
            let (p, m) = (self.eval(t1, t2 + h2), self.eval(t1, t2 - h2));
            [(p[0] - m[0]) / (2.0 * h2), (p[1] - m[1]) / (2.0 * h2)]
        };
        [[d1[0], d2[0]], [d1[1], d2[1]]]
    }

    /// Drop the analytic partials (forces the finite-difference route).
    pub fn without_partials(&self) -> Self {
        VectorField2 {
            value: self.value.clone(),
            jacobian: None,
        }
    }
}

/// A scalar function on the half-plane with optional analytic partials.
#[derive(Clone)]
pub struct ScalarField2 {
    value: Scalar,
    partials: Option<Value2>,
}

impl fmt::Debug for ScalarField2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField2")
            .field("analytic_partials", &self.partials.is_some())
            .finish()
    }
}

impl ScalarField2 {
    pub fn new<F>(value: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        ScalarField2 {
            value: Arc::new(value),
            partials: None,
        }
    }

    pub fn with_partials<F, P>(value: F, partials: P) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
        P: Fn(f64, f64) -> [f64; 2] + Send + Sync + 'static,
    {
        ScalarField2 {
            value: Arc::new(value),
            partials: Some(Arc::new(partials)),
        }
    }

    pub fn eval(&self, t1: f64, t2: f64) -> f64 {
        (self.value)(t1, t2)
    }

    pub fn has_partials(&self) -> bool {
        self.partials.is_some()
    }

    /// `(df/dt1, df/dt2)`: analytic when available, central differences otherwise.
    pub fn partials(&self, t1: f64, t2: f64) -> [f64; 2] {
        if let Some(p) = &self.partials {
            return p(t1, t2);
        }
        let h = PARTIALS_FD_STEP;
        let h2 = h * t2.min(1.0);
        [
            (self.eval(t1 + h, t2) - self.eval(t1 - h, t2)) / (2.0 * h),
            (self.eval(t1, t2 + h2) - self.eval(t1, t2 - h2)) / (2.0 * h2),
        ]
    }

    pub fn without_partials(&self) -> Self {
        ScalarField2 {
            value: self.value.clone(),
            partials: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fd_jacobian_matches_analytic() {
        let f = VectorField2::with_jacobian(
            |a, b| [a * a * b, b.ln() + a],
            |a, b| [[2.0 * a * b, a * a], [1.0, 1.0 / b]],
        );
        let exact = f.jacobian(0.7, 1.3).unwrap();
        let fd = f.without_partials().jacobian_or_fd(0.7, 1.3);
        for k in 0..2 {
            for j in 0..2 {
                assert!((exact[k][j] - fd[k][j]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn scalar_fd_partials() {
        let f = ScalarField2::new(|a, b| a.sin() * b * b);
        let p = f.partials(0.4, 2.0);
        assert!((p[0] - 0.4f64.cos() * 4.0).abs() < 1e-8);
        assert!((p[1] - 0.4f64.sin() * 4.0).abs() < 1e-8);
    }
}
