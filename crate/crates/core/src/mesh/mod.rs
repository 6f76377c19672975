//! Data model for the cable-net reflector: nodes with actuators,
//! triangular panels, derived edges, CSV ingestion and a synthetic
//! geodesic-cap generator.

mod io;
mod synthetic;
mod validate;

pub use io::{load_nodes, load_panels, nodes_to_csv, panels_to_csv};
pub use synthetic::{generate_synthetic_mesh, SyntheticMeshParams};
pub use validate::{validate_mesh, Violation};

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::geometry::Vec3;

/// Errors produced while parsing or assembling a mesh.
#[derive(Debug, Error)]
pub enum MeshError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate node id `{id}`")]
    DuplicateNode { id: String },
    #[error("panel ({id1},{id2},{id3}) repeats node `{repeated}`")]
    InvalidPanel {
        id1: String,
        id2: String,
        id3: String,
        repeated: String,
    },
    #[error("panel references unknown node `{id}`")]
    DanglingReference { id: String },
    #[error("cap selection produced no panels")]
    EmptyCap,
    #[error("invalid mesh parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A main-cable node together with its actuator end points, all in the
/// original telescope frame, meters.
#[derive(Debug, Clone, PartialEq)]
pub struct CableNode {
    pub id: String,
    /// Reference-state position on the sphere.
    pub position: Vec3,
    /// Lower end of the actuator (ground anchor).
    pub anchor: Vec3,
    /// Top end of the actuator in the reference state.
    pub top: Vec3,
}

impl CableNode {
    pub fn new(id: impl Into<String>, position: Vec3, anchor: Vec3, top: Vec3) -> Self {
        CableNode {
            id: id.into(),
            position,
            anchor,
            top,
        }
    }

    /// Actuator axis `top - anchor`; not necessarily radial for real data.
    pub fn actuator_axis(&self) -> Vec3 {
        self.top - self.anchor
    }
}

/// A triangular reflective panel referencing three node labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub node_ids: [String; 3],
}

impl Panel {
    pub fn new(
        id1: impl Into<String>,
        id2: impl Into<String>,
        id3: impl Into<String>,
    ) -> Result<Self, MeshError> {
        let ids = [id1.into(), id2.into(), id3.into()];
        for i in 0..3 {
            if ids[i] == ids[(i + 1) % 3] {
                return Err(MeshError::InvalidPanel {
                    id1: ids[0].clone(),
                    id2: ids[1].clone(),
                    id3: ids[2].clone(),
                    repeated: ids[i].clone(),
                });
            }
        }
        Ok(Panel { node_ids: ids })
    }
}

/// An undirected edge between two node labels, stored with the smaller
/// label first so orientation never matters.
pub type Edge = (String, String);

fn edge_key(a: &str, b: &str) -> Edge {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// The assembled reflector mesh. Immutable after construction; all
/// collections iterate in deterministic (sorted) order.
#[derive(Debug, Clone)]
pub struct Mesh {
    nodes: BTreeMap<String, CableNode>,
    panels: Vec<Panel>,
    edges: BTreeSet<Edge>,
    radius: f64,
}

impl Mesh {
    /// Assembles a mesh, checking label uniqueness and panel referential
    /// integrity, and deriving the deduplicated edge set.
    pub fn new(nodes: Vec<CableNode>, panels: Vec<Panel>, radius: f64) -> Result<Self, MeshError> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(MeshError::InvalidParams(format!(
                "radius must be positive, got {radius}"
            )));
        }
        let mut node_map = BTreeMap::new();
        for node in nodes {
            if node_map.contains_key(&node.id) {
                return Err(MeshError::DuplicateNode { id: node.id });
            }
            node_map.insert(node.id.clone(), node);
        }
        let mut edges = BTreeSet::new();
        for panel in &panels {
            for id in &panel.node_ids {
                if !node_map.contains_key(id) {
                    return Err(MeshError::DanglingReference { id: id.clone() });
                }
            }
            let [a, b, c] = &panel.node_ids;
            edges.insert(edge_key(a, b));
            edges.insert(edge_key(b, c));
            edges.insert(edge_key(c, a));
        }
        Ok(Mesh {
            nodes: node_map,
            panels,
            edges,
            radius,
        })
    }

    pub fn node(&self, id: &str) -> Option<&CableNode> {
        self.nodes.get(id)
    }

    /// Nodes in sorted id order.
    pub fn nodes(&self) -> impl Iterator<Item = &CableNode> {
        self.nodes.values()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn panels(&self) -> &[Panel] {
        &self.panels
    }

    /// Deduplicated undirected edges in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// Deduplicated unordered label pairs from all panel sides of a mesh.
pub fn edges_of(mesh: &Mesh) -> BTreeSet<Edge> {
    mesh.edges.clone()
}
