//! Centralized numeric tolerances.
//!
//! Every epsilon used by the kernel lives here so that predicates, solvers
//! and tests agree on one set of thresholds.

/// Per-entry bound for `R·Rᵀ = I` and `det R = 1` checks on rotation frames.
pub const ORTHONORMALITY_EPS: f64 = 1e-12;

/// How far a caller-supplied "unit" vector may deviate from length 1.
pub const UNIT_VECTOR_EPS: f64 = 1e-9;

/// Maximum residual, in meters, when a point claimed to lie on the
/// paraboloid is substituted back into the surface equation.
pub const SURFACE_RESIDUAL_EPS: f64 = 1e-9;

/// Doubled-area threshold below which a 2D triangle counts as degenerate.
pub const DEGENERATE_TRIANGLE_EPS: f64 = 1e-12;

/// Cross-product norm (m²) below which a panel's vertices are collinear.
pub const DEGENERATE_PANEL_EPS: f64 = 1e-9;

/// Minimum upward `z` component a reflected ray needs to reach the focal
/// plane; anything at or below this counts as a miss, not an error.
pub const ASCENDING_RAY_EPS: f64 = 1e-12;

/// Distance window around exact tangency inside which intersection
/// predicates may report either answer.
pub const TANGENCY_EPS: f64 = 1e-9;

/// Default tolerance, in meters, for `|M| = R` when validating that cable
/// nodes sit on the reference sphere.
pub const SPHERE_RADIUS_TOL: f64 = 1e-3;

/// Actuator length (m) below which the axis is considered zero-length.
pub const ZERO_ACTUATOR_EPS: f64 = 1e-9;

/// Allowed residual of the focal-length identity `1/(4a) + c = -(R - F)`.
pub const FOCAL_IDENTITY_EPS: f64 = 1e-6;

/// Default bisection resolution for the interpolation proportion.
pub const PROPORTION_RESOLUTION: f64 = 1e-3;
