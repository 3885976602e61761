//! Default tolerances and step sizes shared across the crate.
//!
//! Every value here is a default: the operations that use them take the
//! tolerance or step as a parameter, and the regression tests pin these.

/// Sphere point radius check, relative.
pub const SPHERE_RADIUS_REL: f64 = 1e-12;
/// Hyperboloid Minkowski self-product check, relative.
pub const HYPERBOLOID_REL: f64 = 1e-12;
/// Ambient orthogonality of a tangent vector to its base, times `|v|`.
pub const TANGENT_ORTHO: f64 = 1e-10;
/// Coordinate agreement used to decide that two base points coincide.
pub const BASE_MATCH: f64 = 1e-9;
/// Sphere log rejects pairs with `d >= D_kappa - CUT_LOCUS_MARGIN`.
pub const CUT_LOCUS_MARGIN: f64 = 1e-12;
/// Central-difference step for covariant derivatives.
pub const FD_STEP: f64 = 1e-5;
/// Step of the fourth-order central stencil used for metric-dual gradients.
pub const GRADIENT_STEP: f64 = 1e-3;
/// Second-difference step of the Hessian probe.
pub const HESSIAN_STEP: f64 = 1e-3;
/// Smallest accepted finite-difference step.
pub const MIN_STEP: f64 = 1e-12;
/// Relative tolerance for the vertical-line vs semicircle switch on the half-plane.
pub const HALFPLANE_BRANCH_REL: f64 = 1e-12;
/// Default RK4 step count for half-plane transport by ODE integration.
pub const RK4_STEPS: usize = 1024;
/// Strict excess above the level needed to call a chord point a witness.
pub const WITNESS_MARGIN: f64 = 1e-12;
/// Default seed of every sampled run.
pub const DEFAULT_SEED: u64 = 20240001;
