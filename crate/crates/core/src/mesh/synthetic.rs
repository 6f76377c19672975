//! Synthetic geodesic-cap mesh generator.
//!
//! Subdivides an icosahedron, projects the vertices onto the reference
//! sphere, and keeps the cap of panels around the `-z` pole. The base
//! solid is oriented with one face centroid exactly at the pole so that
//! even a coarse cap contains at least one panel.
//!
//! Actuators are strictly radial: the top sits 0.5 m and the ground
//! anchor 2.0 m inside the sphere along the radius through the node. Only
//! the axis direction matters downstream, not the offsets themselves.

use std::collections::HashMap;

use super::{CableNode, Mesh, MeshError, Panel};
use crate::geometry::Vec3;

/// Radial distance (m) from the node to the actuator top.
const ACTUATOR_TOP_OFFSET: f64 = 0.5;
/// Radial distance (m) from the node to the actuator ground anchor.
const ACTUATOR_ANCHOR_OFFSET: f64 = 2.0;

const MAX_SUBDIVISIONS: u32 = 8;

/// Parameters for [`generate_synthetic_mesh`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticMeshParams {
    /// Reference sphere radius, m.
    pub radius: f64,
    /// Half-angle of the kept cap, degrees from the `-z` pole.
    pub cap_half_angle_deg: f64,
    /// Icosahedron subdivision depth.
    pub subdivisions: u32,
    /// Keep the whole sphere instead of cropping to the cap.
    pub full_sphere: bool,
}

impl Default for SyntheticMeshParams {
    fn default() -> Self {
        // 56.3° ≈ asin(250/300.4): a 500 m opening over a 300.4 m sphere.
        SyntheticMeshParams {
            radius: 300.4,
            cap_half_angle_deg: 56.3,
            subdivisions: 3,
            full_sphere: false,
        }
    }
}

/// Unit icosahedron oriented with one face centroid at the `-z` pole.
fn oriented_icosahedron() -> (Vec<Vec3>, Vec<[usize; 3]>) {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let raw = [
        (-1.0, phi, 0.0),
        (1.0, phi, 0.0),
        (-1.0, -phi, 0.0),
        (1.0, -phi, 0.0),
        (0.0, -1.0, phi),
        (0.0, 1.0, phi),
        (0.0, -1.0, -phi),
        (0.0, 1.0, -phi),
        (phi, 0.0, -1.0),
        (phi, 0.0, 1.0),
        (-phi, 0.0, -1.0),
        (-phi, 0.0, 1.0),
    ];
    let faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    let mut vertices: Vec<Vec3> = raw
        .iter()
        .map(|&(x, y, z)| Vec3::new(x, y, z).normalized().expect("nonzero vertex"))
        .collect();

    // Pick the face whose centroid points most toward -z and rotate it
    // exactly onto the pole.
    let centroid = |f: &[usize; 3]| {
        ((vertices[f[0]] + vertices[f[1]] + vertices[f[2]]) * (1.0 / 3.0))
            .normalized()
            .expect("face centroid")
    };
    let lowest = faces
        .iter()
        .min_by(|a, b| centroid(a).z.total_cmp(&centroid(b).z))
        .expect("icosahedron has faces");
    let from = centroid(lowest);
    let to = Vec3::new(0.0, 0.0, -1.0);
    let axis = from.cross(to);
    let sin = axis.norm();
    let cos = from.dot(to);
    if sin > 1e-15 {
        let k = axis * (1.0 / sin);
        for v in vertices.iter_mut() {
            // Rodrigues rotation about k by the angle between from and to.
            *v = *v * cos + k.cross(*v) * sin + k * (k.dot(*v)) * (1.0 - cos);
        }
    }
    (vertices, faces)
}

fn subdivide(vertices: &mut Vec<Vec3>, faces: &[[usize; 3]]) -> Vec<[usize; 3]> {
    let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
    let mut out = Vec::with_capacity(faces.len() * 4);
    let mut midpoint = |i: usize, j: usize, vertices: &mut Vec<Vec3>| -> usize {
        let key = if i < j { (i, j) } else { (j, i) };
        *midpoints.entry(key).or_insert_with(|| {
            let mid = ((vertices[i] + vertices[j]) * 0.5)
                .normalized()
                .expect("midpoint");
            vertices.push(mid);
            vertices.len() - 1
        })
    };
    for &[a, b, c] in faces {
        let ab = midpoint(a, b, vertices);
        let bc = midpoint(b, c, vertices);
        let ca = midpoint(c, a, vertices);
        out.push([a, ab, ca]);
        out.push([b, bc, ab]);
        out.push([c, ca, bc]);
        out.push([ab, bc, ca]);
    }
    out
}

/// Generates the synthetic reflector mesh.
///
/// Every node position satisfies `|position| = radius` exactly up to
/// floating-point rounding; panels survive the crop only when all three
/// vertices lie within the cap.
pub fn generate_synthetic_mesh(params: &SyntheticMeshParams) -> Result<Mesh, MeshError> {
    if !(params.radius.is_finite() && params.radius > 0.0) {
        return Err(MeshError::InvalidParams(format!(
            "radius must be positive, got {}",
            params.radius
        )));
    }
    if !params.full_sphere
        && !(params.cap_half_angle_deg > 0.0 && params.cap_half_angle_deg <= 90.0)
    {
        return Err(MeshError::InvalidParams(format!(
            "cap half-angle must be in (0, 90], got {}",
            params.cap_half_angle_deg
        )));
    }
    if params.subdivisions > MAX_SUBDIVISIONS {
        return Err(MeshError::InvalidParams(format!(
            "subdivisions capped at {MAX_SUBDIVISIONS}, got {}",
            params.subdivisions
        )));
    }

    let (mut vertices, mut faces) = oriented_icosahedron();
    for _ in 0..params.subdivisions {
        faces = subdivide(&mut vertices, &faces);
    }

    let kept: Vec<[usize; 3]> = if params.full_sphere {
        faces
    } else {
        let z_cut = -params.radius * params.cap_half_angle_deg.to_radians().cos();
        faces
            .into_iter()
            .filter(|f| f.iter().all(|&i| vertices[i].z * params.radius <= z_cut))
            .collect()
    };
    if kept.is_empty() {
        return Err(MeshError::EmptyCap);
    }

    let mut used: Vec<usize> = kept.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();

    let label = |index: usize| format!("N{index:05}");
    let nodes: Vec<CableNode> = used
        .iter()
        .map(|&i| {
            let position = vertices[i] * params.radius;
            let radial = vertices[i];
            CableNode::new(
                label(i),
                position,
                position - radial * ACTUATOR_ANCHOR_OFFSET,
                position - radial * ACTUATOR_TOP_OFFSET,
            )
        })
        .collect();
    let panels: Vec<Panel> = kept
        .iter()
        .map(|f| Panel::new(label(f[0]), label(f[1]), label(f[2])).expect("distinct vertices"))
        .collect();

    Mesh::new(nodes, panels, params.radius)
}
