//! Node projection onto the paraboloid and the proportional
//! interpolation solver.

use std::collections::BTreeMap;

use super::{AdjustmentSolution, NodeAdjustment, ParabolaCoeffs, ShapeError, TelescopeConstants};
use crate::exec;
use crate::geometry::{line_paraboloid_intersect, RotationFrame, Vec3};
use crate::mesh::{CableNode, Edge, Mesh};
use crate::tolerances::ZERO_ACTUATOR_EPS;

/// Actuator axis with the zero-length fallback: a degenerate actuator
/// moves along the radial direction through the node, which is the
/// nominal mounting direction anyway.
fn effective_axis(node: &CableNode) -> Vec3 {
    let axis = node.actuator_axis();
    if axis.norm() <= ZERO_ACTUATOR_EPS {
        node.position
    } else {
        axis
    }
}

/// Unit actuator axis oriented away from the sphere center.
pub fn outward_axis(node: &CableNode) -> Vec3 {
    let unit = effective_axis(node)
        .normalized()
        .expect("node position and actuator axis cannot both be zero");
    if unit.dot(node.position) < 0.0 {
        -unit
    } else {
        unit
    }
}

/// Intersects the node's actuator line with the ideal paraboloid in the
/// aligned frame and returns the aligned-frame target point.
pub fn target_on_paraboloid(
    node: &CableNode,
    coeffs: &ParabolaCoeffs,
    frame: &RotationFrame,
) -> Result<Vec3, ShapeError> {
    let origin = frame.apply(node.position);
    let direction = frame
        .apply(effective_axis(node))
        .normalized()
        .expect("node position and actuator axis cannot both be zero");
    line_paraboloid_intersect(origin, direction, coeffs).map_err(|source| ShapeError::NodeTarget {
        id: node.id.clone(),
        source,
    })
}

/// Euclidean distance between the reference position and the moved point.
pub fn displacement(reference: Vec3, moved: Vec3) -> f64 {
    (moved - reference).norm()
}

/// Displacement projected on the outward actuator axis: positive when the
/// node moves away from the sphere center. Both points in the original
/// frame.
pub fn signed_stroke(node: &CableNode, moved: Vec3) -> f64 {
    (moved - node.position).dot(outward_axis(node))
}

/// Relative absolute change of the distance between two nodes.
pub fn edge_ratio(
    before_1: Vec3,
    before_2: Vec3,
    after_1: Vec3,
    after_2: Vec3,
) -> Result<f64, ShapeError> {
    let before = (before_2 - before_1).norm();
    if before == 0.0 {
        return Err(ShapeError::DegenerateEdge);
    }
    let after = (after_2 - after_1).norm();
    Ok((after - before).abs() / before)
}

/// Nodes, edges and panels inside the illuminated aperture.
#[derive(Debug, Clone, PartialEq)]
pub struct ApertureSubset {
    /// Ids of nodes whose aligned-frame position satisfies
    /// `x² + y² ≤ (diameter/2)²`, sorted.
    pub node_ids: Vec<String>,
    /// Edges with both endpoints kept, sorted.
    pub edges: Vec<Edge>,
    /// Indices into `mesh.panels()` with all three vertices kept.
    pub panel_indices: Vec<usize>,
}

/// Selects the mesh subset inside the given aperture diameter, measured
/// around the axis of the aligned frame.
pub fn aperture_filter(mesh: &Mesh, frame: &RotationFrame, diameter: f64) -> ApertureSubset {
    let half_sq = (diameter / 2.0) * (diameter / 2.0);
    let inside = |id: &str| {
        let node = mesh.node(id).expect("mesh integrity");
        let p = frame.apply(node.position);
        p.x * p.x + p.y * p.y <= half_sq
    };
    let node_ids: Vec<String> = mesh
        .nodes()
        .filter(|n| inside(&n.id))
        .map(|n| n.id.clone())
        .collect();
    let edges: Vec<Edge> = mesh
        .edges()
        .filter(|(a, b)| inside(a) && inside(b))
        .cloned()
        .collect();
    let panel_indices: Vec<usize> = mesh
        .panels()
        .iter()
        .enumerate()
        .filter(|(_, p)| p.node_ids.iter().all(|id| inside(id)))
        .map(|(i, _)| i)
        .collect();
    ApertureSubset {
        node_ids,
        edges,
        panel_indices,
    }
}

/// Per-node data for the interpolation solve, all in the aligned frame.
struct MovingNode {
    id: String,
    reference: Vec3,
    target: Vec3,
    /// Outward actuator axis; the stroke at proportion `p` is
    /// `p · (target - reference) · axis`.
    axis: Vec3,
}

/// One constrained edge; endpoints either interpolate with `p` or stay
/// frozen at their reference position.
struct ConstraintEdge {
    ends: [EdgeEnd; 2],
    reference_length: f64,
}

enum EdgeEnd {
    Moving(usize),
    Frozen(Vec3),
}

struct ProportionProblem {
    nodes: Vec<MovingNode>,
    edges: Vec<ConstraintEdge>,
    aperture_edge_count: usize,
}

impl ProportionProblem {
    fn build(
        mesh: &Mesh,
        coeffs: &ParabolaCoeffs,
        frame: &RotationFrame,
        constants: &TelescopeConstants,
    ) -> Result<Self, ShapeError> {
        constants.validate()?;
        coeffs.validate(constants)?;
        let subset = aperture_filter(mesh, frame, constants.aperture_diameter);
        if subset.node_ids.is_empty() {
            return Err(ShapeError::EmptyAperture);
        }

        let moving_refs: Vec<&CableNode> = subset
            .node_ids
            .iter()
            .map(|id| mesh.node(id).expect("mesh integrity"))
            .collect();
        let nodes: Vec<MovingNode> =
            exec::try_map_slice(&moving_refs, |node| -> Result<MovingNode, ShapeError> {
                let target = target_on_paraboloid(node, coeffs, frame)?;
                Ok(MovingNode {
                    id: node.id.clone(),
                    reference: frame.apply(node.position),
                    target,
                    axis: frame.apply(outward_axis(node)),
                })
            })?;
        let index: BTreeMap<&str, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.id.as_str(), i))
            .collect();

        // Constraint set: every edge with at least one moving endpoint.
        // Edges crossing the aperture boundary strain too, so they count.
        let mut edges = Vec::new();
        for (a, b) in mesh.edges() {
            let end = |id: &str| match index.get(id) {
                Some(&i) => EdgeEnd::Moving(i),
                None => {
                    EdgeEnd::Frozen(frame.apply(mesh.node(id).expect("mesh integrity").position))
                }
            };
            let ea = end(a);
            let eb = end(b);
            if matches!((&ea, &eb), (EdgeEnd::Frozen(_), EdgeEnd::Frozen(_))) {
                continue;
            }
            let pa = match ea {
                EdgeEnd::Moving(i) => nodes[i].reference,
                EdgeEnd::Frozen(p) => p,
            };
            let pb = match eb {
                EdgeEnd::Moving(i) => nodes[i].reference,
                EdgeEnd::Frozen(p) => p,
            };
            let reference_length = (pb - pa).norm();
            if reference_length == 0.0 {
                return Err(ShapeError::CoincidentEdge {
                    a: a.clone(),
                    b: b.clone(),
                });
            }
            edges.push(ConstraintEdge {
                ends: [ea, eb],
                reference_length,
            });
        }

        Ok(ProportionProblem {
            nodes,
            edges,
            aperture_edge_count: subset.edges.len(),
        })
    }

    fn end_position(&self, end: &EdgeEnd, p: f64) -> Vec3 {
        match end {
            EdgeEnd::Moving(i) => {
                let n = &self.nodes[*i];
                n.reference + p * (n.target - n.reference)
            }
            EdgeEnd::Frozen(pos) => *pos,
        }
    }

    fn max_edge_ratio(&self, p: f64) -> f64 {
        exec::map_slice(&self.edges, |edge| {
            let a = self.end_position(&edge.ends[0], p);
            let b = self.end_position(&edge.ends[1], p);
            ((b - a).norm() - edge.reference_length).abs() / edge.reference_length
        })
        .into_iter()
        .fold(0.0, f64::max)
    }

    fn strokes_ok(&self, p: f64, limit: f64) -> bool {
        exec::all_slice(&self.nodes, |n| {
            (p * (n.target - n.reference).dot(n.axis)).abs() <= limit
        })
    }

    fn feasible(&self, p: f64, constants: &TelescopeConstants) -> bool {
        self.strokes_ok(p, constants.stroke_limit)
            && self.max_edge_ratio(p) <= constants.edge_ratio_limit
    }

    fn solution_at(&self, p: f64) -> AdjustmentSolution {
        let adjustments: Vec<NodeAdjustment> = self
            .nodes
            .iter()
            .map(|n| {
                let realized = n.reference + p * (n.target - n.reference);
                NodeAdjustment {
                    node_id: n.id.clone(),
                    target: n.target,
                    realized,
                    signed_stroke: (realized - n.reference).dot(n.axis),
                    displacement: (realized - n.reference).norm(),
                }
            })
            .collect();
        let stroke_range = adjustments
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |acc, a| {
                (acc.0.min(a.signed_stroke), acc.1.max(a.signed_stroke))
            });
        AdjustmentSolution {
            proportion: p,
            adjustments,
            max_edge_ratio: self.max_edge_ratio(p),
            stroke_range,
            aperture_node_count: self.nodes.len(),
            aperture_edge_count: self.aperture_edge_count,
        }
    }
}

/// Constraint evaluation at one fixed proportion; see
/// [`evaluate_proportion`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProportionFeasibility {
    pub proportion: f64,
    pub max_edge_ratio: f64,
    pub max_abs_stroke: f64,
    pub feasible: bool,
}

/// Evaluates the stroke and edge-ratio constraints at an arbitrary
/// proportion without searching. Useful for sweeping `p` externally.
pub fn evaluate_proportion(
    mesh: &Mesh,
    coeffs: &ParabolaCoeffs,
    frame: &RotationFrame,
    constants: &TelescopeConstants,
    p: f64,
) -> Result<ProportionFeasibility, ShapeError> {
    let problem = ProportionProblem::build(mesh, coeffs, frame, constants)?;
    let max_edge_ratio = problem.max_edge_ratio(p);
    let max_abs_stroke = problem
        .nodes
        .iter()
        .map(|n| (p * (n.target - n.reference).dot(n.axis)).abs())
        .fold(0.0, f64::max);
    Ok(ProportionFeasibility {
        proportion: p,
        max_edge_ratio,
        max_abs_stroke,
        feasible: max_abs_stroke <= constants.stroke_limit
            && max_edge_ratio <= constants.edge_ratio_limit,
    })
}

/// Finds the largest proportion `p ∈ [0, 1]` such that every actuator
/// stroke stays within `±stroke_limit` and every constrained edge changes
/// length by at most `edge_ratio_limit`, then returns the full solution
/// at that `p`.
///
/// Every node inside the aperture moves to
/// `reference + p·(target - reference)`; nodes outside stay put. The
/// search is bisection at the given resolution, relying on feasibility
/// being monotone in `p` (strain grows as nodes move further); `p = 0`
/// moves nothing and is always feasible.
pub fn solve_proportion(
    mesh: &Mesh,
    coeffs: &ParabolaCoeffs,
    frame: &RotationFrame,
    constants: &TelescopeConstants,
    resolution: f64,
) -> Result<AdjustmentSolution, ShapeError> {
    assert!(
        resolution > 0.0 && resolution < 1.0,
        "resolution must be in (0, 1)"
    );
    let problem = ProportionProblem::build(mesh, coeffs, frame, constants)?;

    let p = if problem.feasible(1.0, constants) {
        1.0
    } else {
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        while hi - lo > resolution {
            let mid = 0.5 * (lo + hi);
            if problem.feasible(mid, constants) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    debug_assert!(
        problem.feasible(p, constants),
        "bisection kept an infeasible proportion"
    );
    Ok(problem.solution_at(p))
}

/// Serializes a solution as `id,X,Y,Z,stroke` rows, with coordinates
/// rotated back into the original telescope frame and rows ordered
/// lexicographically by id.
pub fn export_adjustments(solution: &AdjustmentSolution, frame: &RotationFrame) -> String {
    use std::fmt::Write;
    let mut out = String::from("id,X,Y,Z,stroke\n");
    for adj in &solution.adjustments {
        let p = frame.apply_inverse(adj.realized);
        writeln!(
            out,
            "{},{:.9},{:.9},{:.9},{:.9}",
            adj.node_id, p.x, p.y, p.z, adj.signed_stroke
        )
        .expect("string write");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_rotation, AzEl};
    use crate::mesh::{generate_synthetic_mesh, SyntheticMeshParams};
    use crate::tolerances::PROPORTION_RESOLUTION;

    fn constants() -> TelescopeConstants {
        TelescopeConstants::default()
    }

    fn reference_coeffs() -> ParabolaCoeffs {
        ParabolaCoeffs::from_quadratic(0.0017809, &constants())
    }

    fn radial_node(id: &str, x: f64, y: f64, radius: f64) -> CableNode {
        let z = -(radius * radius - x * x - y * y).sqrt();
        let position = Vec3::new(x, y, z);
        let radial = position.normalized().unwrap();
        CableNode::new(
            id,
            position,
            position - radial * 2.0,
            position - radial * 0.5,
        )
    }

    #[test]
    fn axis_node_targets_the_vertex() {
        let node = radial_node("P", 0.0, 0.0, 300.4);
        let target =
            target_on_paraboloid(&node, &reference_coeffs(), &RotationFrame::identity()).unwrap();
        assert!((target - Vec3::new(0.0, 0.0, reference_coeffs().c)).norm() < 1e-9);
    }

    #[test]
    fn offset_node_target_lies_on_surface() {
        let coeffs = reference_coeffs();
        let node = radial_node("P", 100.0, 0.0, 300.4);
        let target = target_on_paraboloid(&node, &coeffs, &RotationFrame::identity()).unwrap();
        assert!(coeffs.surface_residual(target).abs() < 1e-9);
    }

    #[test]
    fn tilted_actuator_changes_the_target() {
        let coeffs = reference_coeffs();
        let radius = 300.4;
        let radial = radial_node("P", 100.0, 0.0, radius);
        // Tilt the actuator axis 5° off radial, in the x-z plane.
        let position = radial.position;
        let dir = position.normalized().unwrap();
        let tilt = 5.0_f64.to_radians();
        let tilted_dir = Vec3::new(
            dir.x * tilt.cos() - dir.z * tilt.sin(),
            dir.y,
            dir.x * tilt.sin() + dir.z * tilt.cos(),
        );
        let tilted = CableNode::new(
            "P",
            position,
            position - tilted_dir * 2.0,
            position - tilted_dir * 0.5,
        );
        let frame = RotationFrame::identity();
        let t_radial = target_on_paraboloid(&radial, &coeffs, &frame).unwrap();
        let t_tilted = target_on_paraboloid(&tilted, &coeffs, &frame).unwrap();
        assert!((t_radial - t_tilted).norm() > 1e-4);
        assert!(coeffs.surface_residual(t_tilted).abs() < 1e-9);
    }

    #[test]
    fn zero_length_actuator_falls_back_to_radial() {
        let coeffs = reference_coeffs();
        let radius = 300.4_f64;
        let position = Vec3::new(50.0, 20.0, -(radius * radius - 2500.0 - 400.0).sqrt());
        let anchor = position * (1.0 - 2.0 / radius);
        let degenerate = CableNode::new("P", position, anchor, anchor);
        let radial = radial_node("P", 50.0, 20.0, radius);
        let frame = RotationFrame::identity();
        let t1 = target_on_paraboloid(&degenerate, &coeffs, &frame).unwrap();
        let t2 = target_on_paraboloid(&radial, &coeffs, &frame).unwrap();
        assert!((t1 - t2).norm() < 1e-9);
    }

    #[test]
    fn displacement_basics() {
        assert_eq!(
            displacement(Vec3::new(1.0, 2.0, 3.0), Vec3::new(1.0, 2.0, 3.0)),
            0.0
        );
        assert!((displacement(Vec3::ZERO, Vec3::new(1.0, 2.0, 2.0)) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn stroke_sign_follows_the_outward_axis() {
        let node = radial_node("P", 0.0, 0.0, 300.4);
        let axis = outward_axis(&node);
        assert!((axis - Vec3::new(0.0, 0.0, -1.0)).norm() < 1e-12);
        let moved = node.position - 0.3993 * axis;
        assert!((signed_stroke(&node, moved) + 0.3993).abs() < 1e-12);
        assert!((displacement(node.position, moved) - 0.3993).abs() < 1e-12);
    }

    #[test]
    fn inward_actuator_axis_is_flipped_outward() {
        let radius = 300.4;
        let position = Vec3::new(0.0, 0.0, -radius);
        // Anchor above the top: raw axis points toward the sphere center.
        let inverted = CableNode::new(
            "P",
            position,
            Vec3::new(0.0, 0.0, -(radius - 0.5)),
            Vec3::new(0.0, 0.0, -(radius - 2.0)),
        );
        let axis = outward_axis(&inverted);
        assert!((axis - Vec3::new(0.0, 0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn edge_ratio_matches_hand_values() {
        let a = Vec3::ZERO;
        let b = Vec3::new(10.0, 0.0, 0.0);
        assert_eq!(edge_ratio(a, b, a, b).unwrap(), 0.0);
        let ratio = edge_ratio(a, b, a, Vec3::new(10.007, 0.0, 0.0)).unwrap();
        assert!((ratio - 0.0007).abs() < 1e-12);
        assert!(matches!(
            edge_ratio(a, a, a, b),
            Err(ShapeError::DegenerateEdge)
        ));
    }

    #[test]
    fn edge_ratio_is_scale_covariant() {
        let pts = [
            Vec3::new(1.0, 2.0, 3.0),
            Vec3::new(-4.0, 0.5, 2.0),
            Vec3::new(1.2, 2.1, 2.9),
            Vec3::new(-4.4, 0.4, 2.2),
        ];
        let base = edge_ratio(pts[0], pts[1], pts[2], pts[3]).unwrap();
        for s in [0.1, 7.3, 1234.5] {
            let scaled = edge_ratio(pts[0] * s, pts[1] * s, pts[2] * s, pts[3] * s).unwrap();
            assert!((scaled - base).abs() < 1e-12 * base.max(1.0));
        }
    }

    #[test]
    fn aperture_filter_extremes() {
        let mesh = generate_synthetic_mesh(&SyntheticMeshParams {
            subdivisions: 2,
            ..SyntheticMeshParams::default()
        })
        .unwrap();
        let frame = RotationFrame::identity();
        let all = aperture_filter(&mesh, &frame, 2.0 * mesh.radius() + 1.0);
        assert_eq!(all.node_ids.len(), mesh.node_count());
        assert_eq!(all.edges.len(), mesh.edge_count());
        assert_eq!(all.panel_indices.len(), mesh.panels().len());

        let none = aperture_filter(&mesh, &frame, 1e-12);
        for id in &none.node_ids {
            let p = mesh.node(id).unwrap().position;
            assert!(p.x.abs() < 1e-6 && p.y.abs() < 1e-6);
        }
    }

    #[test]
    fn aperture_filter_is_monotone_in_diameter() {
        let mesh = generate_synthetic_mesh(&SyntheticMeshParams {
            subdivisions: 2,
            ..SyntheticMeshParams::default()
        })
        .unwrap();
        let frame = build_rotation(AzEl::new(36.795, 78.169).unwrap()).unwrap();
        let mut prev = 0usize;
        for d in [50.0, 150.0, 300.0, 450.0, 700.0] {
            let subset = aperture_filter(&mesh, &frame, d);
            assert!(subset.node_ids.len() >= prev);
            prev = subset.node_ids.len();
        }
    }

    #[test]
    fn zero_proportion_is_trivially_feasible() {
        let mesh = generate_synthetic_mesh(&SyntheticMeshParams {
            subdivisions: 2,
            ..SyntheticMeshParams::default()
        })
        .unwrap();
        let frame = build_rotation(AzEl::new(36.795, 78.169).unwrap()).unwrap();
        let report =
            evaluate_proportion(&mesh, &reference_coeffs(), &frame, &constants(), 0.0).unwrap();
        assert_eq!(report.max_edge_ratio, 0.0);
        assert_eq!(report.max_abs_stroke, 0.0);
        assert!(report.feasible);
    }

    #[test]
    fn solved_proportion_is_maximal_within_resolution() {
        let mesh = generate_synthetic_mesh(&SyntheticMeshParams {
            subdivisions: 2,
            ..SyntheticMeshParams::default()
        })
        .unwrap();
        let frame = build_rotation(AzEl::new(36.795, 78.169).unwrap()).unwrap();
        let coeffs = reference_coeffs();
        let tc = constants();
        let solution =
            solve_proportion(&mesh, &coeffs, &frame, &tc, PROPORTION_RESOLUTION).unwrap();

        assert!(solution.proportion >= 0.0 && solution.proportion <= 1.0);
        assert!(solution.max_edge_ratio <= tc.edge_ratio_limit);
        assert!(solution.stroke_range.0 >= -tc.stroke_limit - 1e-12);
        assert!(solution.stroke_range.1 <= tc.stroke_limit + 1e-12);

        if solution.proportion < 1.0 {
            let beyond = (solution.proportion + 2.0 * PROPORTION_RESOLUTION).min(1.0);
            let report = evaluate_proportion(&mesh, &coeffs, &frame, &tc, beyond).unwrap();
            assert!(
                !report.feasible,
                "p + 2·resolution should violate a constraint"
            );
        }
    }

    #[test]
    fn solution_interpolates_exactly() {
        let mesh = generate_synthetic_mesh(&SyntheticMeshParams {
            subdivisions: 2,
            ..SyntheticMeshParams::default()
        })
        .unwrap();
        let frame = build_rotation(AzEl::new(36.795, 78.169).unwrap()).unwrap();
        let coeffs = reference_coeffs();
        let tc = constants();
        let solution =
            solve_proportion(&mesh, &coeffs, &frame, &tc, PROPORTION_RESOLUTION).unwrap();
        let p = solution.proportion;
        for adj in &solution.adjustments {
            let node = mesh.node(&adj.node_id).unwrap();
            let reference = frame.apply(node.position);
            let expected = reference + p * (adj.target - reference);
            assert!((adj.realized - expected).norm() < 1e-12);
            assert!(coeffs.surface_residual(adj.target).abs() < 1e-9);
            assert!(adj.signed_stroke.abs() <= adj.displacement + 1e-12);
        }
    }

    #[test]
    fn empty_aperture_is_an_error() {
        let mesh = generate_synthetic_mesh(&SyntheticMeshParams {
            subdivisions: 1,
            ..SyntheticMeshParams::default()
        })
        .unwrap();
        // Point the aligned frame away from the cap so nothing falls inside
        // a pinhole aperture.
        let frame = build_rotation(AzEl::new(0.0, 1.0).unwrap()).unwrap();
        let mut tc = constants();
        tc.aperture_diameter = 1e-9;
        let err = solve_proportion(&mesh, &reference_coeffs(), &frame, &tc, 1e-3).unwrap_err();
        assert!(matches!(err, ShapeError::EmptyAperture));
    }

    #[test]
    fn export_round_trips_through_the_frame() {
        let mesh = generate_synthetic_mesh(&SyntheticMeshParams {
            subdivisions: 2,
            ..SyntheticMeshParams::default()
        })
        .unwrap();
        let frame = build_rotation(AzEl::new(36.795, 78.169).unwrap()).unwrap();
        let solution =
            solve_proportion(&mesh, &reference_coeffs(), &frame, &constants(), 1e-3).unwrap();
        let csv = export_adjustments(&solution, &frame);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("id,X,Y,Z,stroke"));
        let mut rows = 0;
        for (line, adj) in lines.zip(&solution.adjustments) {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 5);
            assert_eq!(fields[0], adj.node_id);
            let parsed = Vec3::new(
                fields[1].parse().unwrap(),
                fields[2].parse().unwrap(),
                fields[3].parse().unwrap(),
            );
            let expected = frame.apply_inverse(adj.realized);
            assert!((parsed - expected).norm() < 1e-9);
            rows += 1;
        }
        assert_eq!(rows, solution.adjustments.len());
        // Rows are sorted by id.
        let ids: Vec<&str> = solution
            .adjustments
            .iter()
            .map(|a| a.node_id.as_str())
            .collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn empty_solution_exports_header_only() {
        let solution = AdjustmentSolution {
            proportion: 0.0,
            adjustments: vec![],
            max_edge_ratio: 0.0,
            stroke_range: (0.0, 0.0),
            aperture_node_count: 0,
            aperture_edge_count: 0,
        };
        assert_eq!(
            export_adjustments(&solution, &RotationFrame::identity()),
            "id,X,Y,Z,stroke\n"
        );
    }
}
