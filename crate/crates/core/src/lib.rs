#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Constant-curvature Riemannian geometry kernel plus a laboratory for
//! linear affine functions and the convexity of their sub-level sets.

pub mod affine;
pub mod convexity;
pub mod error;
pub mod linalg;
pub mod manifold;
pub mod poincare;
pub mod sampling;
pub mod space;
pub mod tol;

pub use affine::{AffineProbe, CheckReport, Verdict};
pub use convexity::{ConvexityReport, ScanVerdict};
pub use error::{GeoError, Result};
pub use manifold::GeodesicSegment;
pub use space::{Point, SpaceKind, SpaceSpec, TangentVec};
