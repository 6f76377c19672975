//! Mesh validation against the reference-sphere assumptions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{edge_key, Mesh};
use crate::shape::TelescopeConstants;
use crate::tolerances::{SPHERE_RADIUS_TOL, ZERO_ACTUATOR_EPS};

/// One rule violation; an empty report means the mesh is valid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub code: String,
    pub node_or_panel: String,
    pub message: String,
}

fn violation(code: &str, subject: impl Into<String>, message: String) -> Violation {
    Violation {
        code: code.to_string(),
        node_or_panel: subject.into(),
        message,
    }
}

/// Checks that every node sits on the reference sphere, every actuator
/// has nonzero length, panel references resolve, and no edge is shared by
/// more than two panels. Violations are reported, never raised.
pub fn validate_mesh(mesh: &Mesh, constants: &TelescopeConstants) -> Vec<Violation> {
    let mut report = Vec::new();

    if (mesh.radius() - constants.radius).abs() > SPHERE_RADIUS_TOL {
        report.push(violation(
            "radius-mismatch",
            "(mesh)",
            format!(
                "mesh declares radius {} but constants use {}",
                mesh.radius(),
                constants.radius
            ),
        ));
    }

    for node in mesh.nodes() {
        let r = node.position.norm();
        if (r - mesh.radius()).abs() > SPHERE_RADIUS_TOL {
            report.push(violation(
                "off-sphere",
                node.id.clone(),
                format!(
                    "|position| = {r:.6} m, expected {} ± {SPHERE_RADIUS_TOL}",
                    mesh.radius()
                ),
            ));
        }
        if node.actuator_axis().norm() <= ZERO_ACTUATOR_EPS {
            report.push(violation(
                "zero-length-actuator",
                node.id.clone(),
                "actuator top and anchor coincide".to_string(),
            ));
        }
    }

    let mut edge_uses: BTreeMap<(String, String), usize> = BTreeMap::new();
    for (index, panel) in mesh.panels().iter().enumerate() {
        for id in &panel.node_ids {
            if mesh.node(id).is_none() {
                report.push(violation(
                    "dangling-panel",
                    format!("panel {index}"),
                    format!("references unknown node `{id}`"),
                ));
            }
        }
        let [a, b, c] = &panel.node_ids;
        for (x, y) in [(a, b), (b, c), (c, a)] {
            *edge_uses.entry(edge_key(x, y)).or_insert(0) += 1;
        }
    }
    for ((a, b), uses) in edge_uses {
        if uses > 2 {
            report.push(violation(
                "duplicate-edge",
                format!("{a}-{b}"),
                format!("edge appears in {uses} panels"),
            ));
        }
    }

    report
}
