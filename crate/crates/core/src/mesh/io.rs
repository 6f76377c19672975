//! CSV ingestion and serialization of node and panel tables.
//!
//! Nodes: header `id,Mx,My,Mz,Dx,Dy,Dz,Ux,Uy,Uz`, meters.
//! Panels: header `id1,id2,id3`.
//!
//! Labels are opaque strings; numeric fields are written with nine
//! decimal places so a write/read round trip stays within 1e-9 m.

use std::collections::BTreeSet;
use std::io::BufRead;

use super::{CableNode, MeshError, Panel};
use crate::geometry::Vec3;

pub const NODES_HEADER: &str = "id,Mx,My,Mz,Dx,Dy,Dz,Ux,Uy,Uz";
pub const PANELS_HEADER: &str = "id1,id2,id3";

fn parse_field(raw: &str, line: usize, column: &str) -> Result<f64, MeshError> {
    raw.trim().parse::<f64>().map_err(|_| MeshError::Parse {
        line,
        message: format!("column {column}: cannot parse `{raw}` as a number"),
    })
}

/// Parses the node table from a delimited text stream.
///
/// Duplicate ids and malformed rows are reported with their line number
/// (1-based, counting the header).
pub fn load_nodes<R: BufRead>(reader: R) -> Result<Vec<CableNode>, MeshError> {
    let mut lines = reader.lines().enumerate();
    let header = match lines.next() {
        Some((_, line)) => line?,
        None => {
            return Err(MeshError::Parse {
                line: 1,
                message: "empty stream, expected header".into(),
            })
        }
    };
    if header.trim() != NODES_HEADER {
        return Err(MeshError::Parse {
            line: 1,
            message: format!("expected header `{NODES_HEADER}`, got `{}`", header.trim()),
        });
    }

    let mut seen = BTreeSet::new();
    let mut nodes = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 10 {
            return Err(MeshError::Parse {
                line: line_no,
                message: format!("expected 10 fields, got {}", fields.len()),
            });
        }
        let id = fields[0].trim().to_string();
        if id.is_empty() {
            return Err(MeshError::Parse {
                line: line_no,
                message: "empty node id".into(),
            });
        }
        if !seen.insert(id.clone()) {
            return Err(MeshError::DuplicateNode { id });
        }
        let mut v = [0.0; 9];
        let columns = ["Mx", "My", "Mz", "Dx", "Dy", "Dz", "Ux", "Uy", "Uz"];
        for (slot, (raw, column)) in v.iter_mut().zip(fields[1..].iter().zip(columns)) {
            *slot = parse_field(raw, line_no, column)?;
        }
        nodes.push(CableNode::new(
            id,
            Vec3::new(v[0], v[1], v[2]),
            Vec3::new(v[3], v[4], v[5]),
            Vec3::new(v[6], v[7], v[8]),
        ));
    }
    Ok(nodes)
}

/// Parses the panel table. Referential integrity against a node set is
/// checked later, at mesh assembly.
pub fn load_panels<R: BufRead>(reader: R) -> Result<Vec<Panel>, MeshError> {
    let mut lines = reader.lines().enumerate();
    let header = match lines.next() {
        Some((_, line)) => line?,
        None => {
            return Err(MeshError::Parse {
                line: 1,
                message: "empty stream, expected header".into(),
            })
        }
    };
    if header.trim() != PANELS_HEADER {
        return Err(MeshError::Parse {
            line: 1,
            message: format!("expected header `{PANELS_HEADER}`, got `{}`", header.trim()),
        });
    }

    let mut panels = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(MeshError::Parse {
                line: line_no,
                message: format!("expected 3 fields, got {}", fields.len()),
            });
        }
        panels.push(Panel::new(
            fields[0].trim(),
            fields[1].trim(),
            fields[2].trim(),
        )?);
    }
    Ok(panels)
}

fn push_coords(out: &mut String, v: Vec3) {
    use std::fmt::Write;
    write!(out, ",{:.9},{:.9},{:.9}", v.x, v.y, v.z).expect("string write");
}

/// Serializes nodes in the `load_nodes` format, sorted by id.
pub fn nodes_to_csv<'a>(nodes: impl IntoIterator<Item = &'a CableNode>) -> String {
    let mut sorted: Vec<&CableNode> = nodes.into_iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    let mut out = String::from(NODES_HEADER);
    out.push('\n');
    for node in sorted {
        out.push_str(&node.id);
        push_coords(&mut out, node.position);
        push_coords(&mut out, node.anchor);
        push_coords(&mut out, node.top);
        out.push('\n');
    }
    out
}

/// Serializes panels in the `load_panels` format, in mesh order.
pub fn panels_to_csv<'a>(panels: impl IntoIterator<Item = &'a Panel>) -> String {
    let mut out = String::from(PANELS_HEADER);
    out.push('\n');
    for panel in panels {
        out.push_str(&panel.node_ids.join(","));
        out.push('\n');
    }
    out
}
