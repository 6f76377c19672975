//! Specular reflection of the axial signal.

use super::{GeometryError, Vec3};
use crate::tolerances::UNIT_VECTOR_EPS;

/// Reflects the downward-traveling axial signal off a surface with unit
/// normal `n0`, returning the unit direction of the reflected ray.
///
/// For unit `n0 = (x0, y0, z0)` the closed form is
/// `n = (2·x0·z0, 2·y0·z0, z0² - x0² - y0²)`. The result is coplanar with
/// `n0` and the z axis and makes the same angle with `n0` as the incident
/// axis does; rays reflected off upward-facing normals travel toward
/// increasing `z`, where the focal plane lies.
pub fn reflect_unit_z(n0: Vec3) -> Result<Vec3, GeometryError> {
    if !n0.is_finite() {
        return Err(GeometryError::NonFinite("surface normal"));
    }
    let norm = n0.norm();
    if (norm - 1.0).abs() > UNIT_VECTOR_EPS {
        return Err(GeometryError::NotUnit { norm });
    }
    Ok(Vec3::new(
        2.0 * n0.x * n0.z,
        2.0 * n0.y * n0.z,
        n0.z * n0.z - n0.x * n0.x - n0.y * n0.y,
    ))
}
