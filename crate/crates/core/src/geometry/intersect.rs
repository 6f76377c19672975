//! Line–plane and line–paraboloid intersections.

use super::{GeometryError, Vec3};
use crate::shape::ParabolaCoeffs;
use crate::tolerances::{SURFACE_RESIDUAL_EPS, UNIT_VECTOR_EPS};

/// Intersects the line `origin + t·direction` (any real `t`) with the
/// horizontal plane `z = plane_z`.
pub fn line_plane_intersect(
    origin: Vec3,
    direction: Vec3,
    plane_z: f64,
) -> Result<Vec3, GeometryError> {
    if !origin.is_finite() || !direction.is_finite() || !plane_z.is_finite() {
        return Err(GeometryError::NonFinite("line or plane"));
    }
    if direction.norm_squared() == 0.0 {
        return Err(GeometryError::NonFinite("zero direction"));
    }
    if direction.z == 0.0 {
        return if origin.z == plane_z {
            Err(GeometryError::CoplanarLine)
        } else {
            Err(GeometryError::NoIntersection { target: "plane" })
        };
    }
    let t = (plane_z - origin.z) / direction.z;
    let point = Vec3::new(
        origin.x + t * direction.x,
        origin.y + t * direction.y,
        plane_z,
    );
    if !point.is_finite() {
        return Err(GeometryError::NoIntersection { target: "plane" });
    }
    Ok(point)
}

/// Intersects the line `origin + t·direction` (unit `direction`) with the
/// surface `z = a·(x² + y²) + c`.
///
/// Substituting the line into the surface equation yields a quadratic in
/// `t`; of the real roots, the one with the smallest `|t|` is returned —
/// node adjustments are sub-meter while the far root of a shallow bowl is
/// hundreds of meters away.
pub fn line_paraboloid_intersect(
    origin: Vec3,
    direction: Vec3,
    coeffs: &ParabolaCoeffs,
) -> Result<Vec3, GeometryError> {
    if !origin.is_finite() || !direction.is_finite() {
        return Err(GeometryError::NonFinite("line"));
    }
    let norm = direction.norm();
    if (norm - 1.0).abs() > UNIT_VECTOR_EPS {
        return Err(GeometryError::NotUnit { norm });
    }

    let (a, c) = (coeffs.a, coeffs.c);
    let qa = a * (direction.x * direction.x + direction.y * direction.y);
    let qb = 2.0 * a * (origin.x * direction.x + origin.y * direction.y) - direction.z;
    let qc = a * (origin.x * origin.x + origin.y * origin.y) + c - origin.z;

    let t = if qa == 0.0 {
        // Vertical line (or a = 0): the quadratic collapses to linear.
        if qb == 0.0 {
            if qc.abs() <= SURFACE_RESIDUAL_EPS {
                0.0
            } else {
                return Err(GeometryError::NoIntersection {
                    target: "paraboloid",
                });
            }
        } else {
            -qc / qb
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            return Err(GeometryError::NoIntersection {
                target: "paraboloid",
            });
        }
        let q = -0.5 * (qb + qb.signum() * disc.sqrt());
        if q == 0.0 {
            0.0
        } else {
            let t1 = q / qa;
            let t2 = qc / q;
            if t1.abs() <= t2.abs() {
                t1
            } else {
                t2
            }
        }
    };

    let point = origin + t * direction;
    if !point.is_finite() {
        return Err(GeometryError::NoIntersection {
            target: "paraboloid",
        });
    }
    Ok(point)
}
