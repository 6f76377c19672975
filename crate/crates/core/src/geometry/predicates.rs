//! Planar predicates on the focal plane: point-in-triangle,
//! segment–circle intersection, and disk–triangle overlap.
//!
//! Disks and triangles are treated as closed sets, except that
//! [`point_in_triangle`] tests the strict interior. Tangency outcomes
//! within [`crate::tolerances::TANGENCY_EPS`] of the boundary are
//! accepted either way by the test suite.

use super::{GeometryError, Point2, Triangle2D};
use crate::tolerances::DEGENERATE_TRIANGLE_EPS;

fn det2(px: f64, py: f64, qx: f64, qy: f64) -> f64 {
    px * qy - py * qx
}

/// True iff `p` lies strictly inside the triangle.
///
/// Decomposes `p - a` over the edge vectors `b - a` and `c - a`; the point
/// is interior when both barycentric coefficients are positive and their
/// sum is below one.
pub fn point_in_triangle(p: Point2, tri: &Triangle2D) -> Result<bool, GeometryError> {
    let det = tri.doubled_area();
    if det.abs() <= DEGENERATE_TRIANGLE_EPS {
        return Err(GeometryError::DegenerateTriangle { doubled_area: det });
    }
    let (ux, uy) = (p.x - tri.a.x, p.y - tri.a.y);
    let (v1x, v1y) = (tri.b.x - tri.a.x, tri.b.y - tri.a.y);
    let (v2x, v2y) = (tri.c.x - tri.a.x, tri.c.y - tri.a.y);
    let ca = det2(ux, uy, v2x, v2y) / det;
    let cb = det2(v1x, v1y, ux, uy) / det;
    Ok(ca > 0.0 && cb > 0.0 && ca + cb < 1.0)
}

/// True iff the closed segment `p1`–`p2` touches or crosses the circle of
/// the given radius centered at the origin.
///
/// Solved parametrically: substituting `p1 + t·(p2 - p1)` into
/// `x² + y² = r²` gives a quadratic in `t`, and the segment meets the
/// circle iff a real root falls in `[0, 1]`. A degenerate segment
/// (`p1 = p2`) is treated as a point test against the closed disk.
///
/// # Panics
///
/// Panics if `radius` is not strictly positive.
pub fn segment_circle_intersect(p1: Point2, p2: Point2, radius: f64) -> bool {
    assert!(radius > 0.0, "circle radius must be positive");
    let (dx, dy) = (p2.x - p1.x, p2.y - p1.y);
    let qa = dx * dx + dy * dy;
    if qa == 0.0 {
        return p1.norm() <= radius;
    }
    let qb = 2.0 * (p1.x * dx + p1.y * dy);
    let qc = p1.x * p1.x + p1.y * p1.y - radius * radius;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return false;
    }
    let sq = disc.sqrt();
    let t1 = (-qb - sq) / (2.0 * qa);
    let t2 = (-qb + sq) / (2.0 * qa);
    (0.0..=1.0).contains(&t1) || (0.0..=1.0).contains(&t2)
}

/// True iff the closed triangle and the closed disk of the given radius
/// centered at the origin share at least one point.
///
/// Three cases cover the closed-set intersection exactly: the disk center
/// inside the triangle (disk within triangle), a triangle edge meeting the
/// circle (partial overlap), or a triangle vertex inside the disk
/// (triangle within disk). A degenerate triangle is evaluated as its three
/// edges and vertices only.
///
/// # Panics
///
/// Panics if `radius` is not strictly positive.
pub fn disk_triangle_overlap(tri: &Triangle2D, radius: f64) -> bool {
    assert!(radius > 0.0, "disk radius must be positive");
    if tri.vertices().iter().any(|v| v.norm() <= radius) {
        return true;
    }
    if tri
        .edges()
        .iter()
        .any(|&(s, e)| segment_circle_intersect(s, e, radius))
    {
        return true;
    }
    matches!(point_in_triangle(Point2::new(0.0, 0.0), tri), Ok(true))
}
