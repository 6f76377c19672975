//! Ideal-paraboloid fitting and the actuator adjustment solver.
//!
//! [`fit_parabola`] finds the axisymmetric paraboloid closest to the lower
//! cap of the reference sphere under the focal-length constraint.
//! [`solve_proportion`] then moves every aperture node along its actuator
//! axis toward that surface by the largest uniform proportion that keeps
//! actuator strokes and relative edge-length changes within limits.

mod adjust;
mod fit;

pub use adjust::{
    aperture_filter, displacement, edge_ratio, evaluate_proportion, export_adjustments,
    outward_axis, signed_stroke, solve_proportion, target_on_paraboloid, ApertureSubset,
    ProportionFeasibility,
};
pub use fit::{fit_parabola, loss, DEFAULT_LOSS_STEP};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{GeometryError, Vec3};
use crate::tolerances::FOCAL_IDENTITY_EPS;

/// Errors produced by the fitting and adjustment operations.
#[derive(Debug, Error)]
pub enum ShapeError {
    #[error("invalid telescope constants: {0}")]
    InvalidConstants(String),
    #[error("parabola fit failed: {0}")]
    OptimizationFailed(String),
    #[error("invalid parabola coefficients: {0}")]
    InvalidCoeffs(String),
    #[error("edge endpoints coincide in the reference state; edge ratio undefined")]
    DegenerateEdge,
    #[error("edge {a}-{b}: reference endpoints coincide, edge ratio undefined")]
    CoincidentEdge { a: String, b: String },
    #[error("no cable nodes inside the aperture")]
    EmptyAperture,
    #[error("node `{id}`: {source}")]
    NodeTarget { id: String, source: GeometryError },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Physical constants of the telescope. All lengths in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TelescopeConstants {
    /// Radius of the reference sphere.
    pub radius: f64,
    /// Distance between the reference sphere and the focal sphere; the
    /// focal plane sits at `z = -(radius - focal_distance)`.
    pub focal_distance: f64,
    /// Diameter of the illuminated aperture, measured in the aligned frame.
    pub aperture_diameter: f64,
    /// Maximum absolute actuator stroke.
    pub stroke_limit: f64,
    /// Maximum relative change of the distance between adjacent nodes.
    pub edge_ratio_limit: f64,
    /// Radius of the receiver cabin's effective disk on the focal plane.
    pub cabin_radius: f64,
}

impl Default for TelescopeConstants {
    fn default() -> Self {
        let radius = 300.4;
        TelescopeConstants {
            radius,
            focal_distance: 0.466 * radius,
            aperture_diameter: 300.0,
            stroke_limit: 0.6,
            edge_ratio_limit: 0.0007,
            cabin_radius: 0.5,
        }
    }
}

impl TelescopeConstants {
    pub fn validate(&self) -> Result<(), ShapeError> {
        let fields = [
            ("radius", self.radius),
            ("focal_distance", self.focal_distance),
            ("aperture_diameter", self.aperture_diameter),
            ("stroke_limit", self.stroke_limit),
            ("edge_ratio_limit", self.edge_ratio_limit),
            ("cabin_radius", self.cabin_radius),
        ];
        for (name, value) in fields {
            if !value.is_finite() || value <= 0.0 {
                return Err(ShapeError::InvalidConstants(format!(
                    "{name} must be strictly positive, got {value}"
                )));
            }
        }
        if self.focal_distance >= self.radius {
            return Err(ShapeError::InvalidConstants(format!(
                "focal_distance {} must be below radius {}",
                self.focal_distance, self.radius
            )));
        }
        Ok(())
    }

    /// Height of the focal plane: `z = -(radius - focal_distance)`.
    pub fn focal_plane_z(&self) -> f64 {
        -(self.radius - self.focal_distance)
    }
}

/// Coefficients of the ideal paraboloid `z = a·(x² + y²) + c`.
///
/// `a` and `c` are tied by the focal-length identity
/// `1/(4a) + c = -(radius - focal_distance)`, which places the focus on
/// the focal plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParabolaCoeffs {
    /// Quadratic coefficient, 1/m.
    pub a: f64,
    /// Vertex height, m.
    pub c: f64,
}

impl ParabolaCoeffs {
    /// Builds coefficients from `a` alone, deriving `c` from the
    /// focal-length identity.
    pub fn from_quadratic(a: f64, constants: &TelescopeConstants) -> Self {
        ParabolaCoeffs {
            a,
            c: constants.focal_plane_z() - 1.0 / (4.0 * a),
        }
    }

    pub fn validate(&self, constants: &TelescopeConstants) -> Result<(), ShapeError> {
        if !self.a.is_finite() || self.a <= 0.0 {
            return Err(ShapeError::InvalidCoeffs(format!(
                "quadratic coefficient must be positive, got {}",
                self.a
            )));
        }
        let residual = 1.0 / (4.0 * self.a) + self.c - constants.focal_plane_z();
        if residual.abs() > FOCAL_IDENTITY_EPS {
            return Err(ShapeError::InvalidCoeffs(format!(
                "focal identity violated by {residual:e} m"
            )));
        }
        Ok(())
    }

    /// Surface height at the given horizontal position.
    pub fn height_at(&self, x: f64, y: f64) -> f64 {
        self.a * (x * x + y * y) + self.c
    }

    /// `z - a·(x² + y²) - c`; zero for points on the surface.
    pub fn surface_residual(&self, p: Vec3) -> f64 {
        p.z - self.height_at(p.x, p.y)
    }
}

/// Movement of one cable node toward its paraboloid target. All points are
/// in the aligned frame.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeAdjustment {
    pub node_id: String,
    /// Intersection of the actuator line with the ideal paraboloid.
    pub target: Vec3,
    /// Point actually reached after proportional scaling.
    pub realized: Vec3,
    /// Displacement projected on the outward actuator axis, in meters.
    pub signed_stroke: f64,
    /// Euclidean distance from the reference position to `realized`.
    pub displacement: f64,
}

/// Result of the proportional interpolation solve.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjustmentSolution {
    /// Uniform fraction of the way from the sphere toward the paraboloid.
    pub proportion: f64,
    /// One entry per aperture node, sorted by node id.
    pub adjustments: Vec<NodeAdjustment>,
    /// Largest relative edge-length change at this proportion.
    pub max_edge_ratio: f64,
    /// (min, max) signed stroke over the aperture nodes.
    pub stroke_range: (f64, f64),
    pub aperture_node_count: usize,
    pub aperture_edge_count: usize,
}

impl AdjustmentSolution {
    /// Looks up the adjustment for a node id, if the node is in the aperture.
    pub fn adjustment_for(&self, id: &str) -> Option<&NodeAdjustment> {
        self.adjustments
            .binary_search_by(|adj| adj.node_id.as_str().cmp(id))
            .ok()
            .map(|i| &self.adjustments[i])
    }
}
