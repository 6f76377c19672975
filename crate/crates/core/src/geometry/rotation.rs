//! Rotation frame aligning the source direction with the `+z` axis.
//!
//! The frame is the composition of a rotation about `y` (through the
//! complement of the angle `theta'` between the source meridian plane and
//! the `x` axis) and a rotation about `x` (through the tilt angle `gamma`
//! of the source out of the x–z plane). The rotation about `z` is the
//! identity. Both angles are recoverable for inspection.

use serde::{Deserialize, Serialize};

use super::{AzEl, GeometryError, Vec3};

/// Orthonormal 3×3 matrix mapping the source direction to `(0, 0, 1)`,
/// stored row-major together with its two construction angles (radians).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationFrame {
    rows: [Vec3; 3],
    theta_prime: f64,
    gamma: f64,
}

impl RotationFrame {
    /// The frame for a source at the zenith: no rotation at all.
    pub fn identity() -> Self {
        RotationFrame {
            rows: [
                Vec3::new(1.0, 0.0, 0.0),
                Vec3::new(0.0, 1.0, 0.0),
                Vec3::new(0.0, 0.0, 1.0),
            ],
            theta_prime: std::f64::consts::FRAC_PI_2,
            gamma: 0.0,
        }
    }

    pub fn rows(&self) -> [Vec3; 3] {
        self.rows
    }

    pub fn row(&self, i: usize) -> Vec3 {
        self.rows[i]
    }

    /// Angle (radians) between the projection of the source onto the x–z
    /// plane and the `x` axis.
    pub fn theta_prime(&self) -> f64 {
        self.theta_prime
    }

    /// Tilt angle (radians) of the source out of the x–z plane.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `R · p`: original-frame coordinates into the aligned frame.
    pub fn apply(&self, p: Vec3) -> Vec3 {
        Vec3::new(
            self.rows[0].dot(p),
            self.rows[1].dot(p),
            self.rows[2].dot(p),
        )
    }

    /// `Rᵀ · p`: aligned-frame coordinates back into the original frame.
    pub fn apply_inverse(&self, p: Vec3) -> Vec3 {
        let [r0, r1, r2] = self.rows;
        Vec3::new(
            r0.x * p.x + r1.x * p.y + r2.x * p.z,
            r0.y * p.x + r1.y * p.y + r2.y * p.z,
            r0.z * p.x + r1.z * p.y + r2.z * p.z,
        )
    }
}

/// Builds the rotation that maps the unit source direction
/// `(cosβ·cosα, cosβ·sinα, sinβ)` onto `(0, 0, 1)`.
///
/// The matrix is
///
/// ```text
/// ⎡  sinθ'        0      -cosθ'       ⎤
/// ⎢ -sinγ·cosθ'   cosγ   -sinγ·sinθ'  ⎥
/// ⎣  cosγ·cosθ'   sinγ    cosγ·sinθ'  ⎦
/// ```
///
/// with `cosθ' = cosβ·cosα / w`, `sinθ' = sinβ / w`, `cosγ = w`,
/// `sinγ = cosβ·sinα`, and `w = √(1 - cos²β·sin²α)`. The signed sine and
/// cosine values keep the construction continuous through the meridian
/// configurations where the intermediate-axis derivation would divide by
/// zero; `w > 0` holds everywhere on the valid input range. A source at
/// the zenith (`β = 90°`) short-circuits to the identity frame.
pub fn build_rotation(dir: AzEl) -> Result<RotationFrame, GeometryError> {
    // Re-validate: AzEl is a plain struct and callers may have built it
    // with out-of-range literals.
    let dir = AzEl::new(dir.alpha, dir.beta)?;
    if dir.beta == 90.0 {
        return Ok(RotationFrame::identity());
    }

    let (sin_a, cos_a) = dir.alpha.to_radians().sin_cos();
    let (sin_b, cos_b) = dir.beta.to_radians().sin_cos();

    let sin_g = cos_b * sin_a;
    // w² = 1 - sin²γ, written as a sum of squares so grazing elevations
    // do not cancel.
    let w = (sin_b * sin_b + (cos_b * cos_a) * (cos_b * cos_a)).sqrt();
    let cos_g = w;
    let cos_tp = cos_b * cos_a / w;
    let sin_tp = sin_b / w;

    Ok(RotationFrame {
        rows: [
            Vec3::new(sin_tp, 0.0, -cos_tp),
            Vec3::new(-sin_g * cos_tp, cos_g, -sin_g * sin_tp),
            Vec3::new(cos_g * cos_tp, sin_g, cos_g * sin_tp),
        ],
        theta_prime: sin_tp.atan2(cos_tp),
        gamma: sin_g.atan2(cos_g),
    })
}
