//! Pure vector/matrix kernel: frame-alignment rotations, specular
//! reflection of the axial signal, line–plane and line–paraboloid
//! intersections, and planar predicates.
//!
//! Everything here is a pure function of its inputs; all types are
//! `Copy` and safe to share across threads.

mod intersect;
mod predicates;
mod reflect;
mod rotation;

pub use intersect::{line_paraboloid_intersect, line_plane_intersect};
pub use predicates::{disk_triangle_overlap, point_in_triangle, segment_circle_intersect};
pub use reflect::reflect_unit_z;
pub use rotation::{build_rotation, RotationFrame};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tolerances::DEGENERATE_TRIANGLE_EPS;

/// Errors produced by the geometry kernel.
#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("non-finite input in {0}")]
    NonFinite(&'static str),
    #[error("direction out of range: alpha={alpha}°, beta={beta}° (need 0 ≤ alpha < 360, 0 < beta ≤ 90)")]
    InvalidDirection { alpha: f64, beta: f64 },
    #[error("expected a unit vector, got length {norm}")]
    NotUnit { norm: f64 },
    #[error("line does not intersect the {target}")]
    NoIntersection { target: &'static str },
    #[error("line is coplanar with the target plane")]
    CoplanarLine,
    #[error("degenerate triangle (doubled area {doubled_area:e})")]
    DegenerateTriangle { doubled_area: f64 },
}

/// A 3-component vector in meters (or dimensionless when unit-length).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Unit vector with the same direction, or `None` for a zero vector.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            None
        } else {
            Some(self * (1.0 / n))
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Drops the z component.
    pub fn xy(self) -> Point2 {
        Point2 {
            x: self.x,
            y: self.y,
        }
    }
}

impl std::ops::Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl std::ops::Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl std::ops::Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl std::ops::Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl std::ops::Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

/// A point in the focal plane (meters).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn norm(self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }
}

/// Source direction as azimuth/elevation, both in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AzEl {
    /// Azimuth in degrees, `0 ≤ alpha < 360`.
    pub alpha: f64,
    /// Elevation in degrees, `0 < beta ≤ 90`.
    pub beta: f64,
}

impl AzEl {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, GeometryError> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(GeometryError::NonFinite("azimuth/elevation"));
        }
        if !(0.0..360.0).contains(&alpha) || !(beta > 0.0 && beta <= 90.0) {
            return Err(GeometryError::InvalidDirection { alpha, beta });
        }
        Ok(AzEl { alpha, beta })
    }

    /// Unit vector from the sphere center toward the source.
    pub fn unit_vector(self) -> Vec3 {
        let (sin_a, cos_a) = self.alpha.to_radians().sin_cos();
        let (sin_b, cos_b) = self.beta.to_radians().sin_cos();
        Vec3::new(cos_b * cos_a, cos_b * sin_a, sin_b)
    }
}

/// Triangle in the focal plane, vertices in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle2D {
    pub a: Point2,
    pub b: Point2,
    pub c: Point2,
}

impl Triangle2D {
    pub const fn new(a: Point2, b: Point2, c: Point2) -> Self {
        Triangle2D { a, b, c }
    }

    /// Signed doubled area: `det(b - a, c - a)`.
    pub fn doubled_area(&self) -> f64 {
        let v1 = (self.b.x - self.a.x, self.b.y - self.a.y);
        let v2 = (self.c.x - self.a.x, self.c.y - self.a.y);
        v1.0 * v2.1 - v1.1 * v2.0
    }

    pub fn is_degenerate(&self) -> bool {
        self.doubled_area().abs() <= DEGENERATE_TRIANGLE_EPS
    }

    pub fn vertices(&self) -> [Point2; 3] {
        [self.a, self.b, self.c]
    }

    /// The three sides as (start, end) pairs.
    pub fn edges(&self) -> [(Point2, Point2); 3] {
        [(self.a, self.b), (self.b, self.c), (self.c, self.a)]
    }
}
