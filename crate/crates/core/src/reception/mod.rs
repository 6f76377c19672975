//! Per-panel evaluation of whether the specularly reflected signal
//! reaches the receiver cabin's effective disk on the focal plane.
//!
//! The incident signal is parallel, so a flat panel reflects into a
//! single direction and its footprint on the focal plane is again a
//! triangle: project the three vertices along the reflected direction
//! and test the projected triangle against the cabin disk.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec;
use crate::geometry::{
    disk_triangle_overlap, line_plane_intersect, reflect_unit_z, GeometryError, RotationFrame,
    Triangle2D, Vec3,
};
use crate::mesh::Mesh;
use crate::shape::{aperture_filter, AdjustmentSolution, TelescopeConstants};
use crate::tolerances::{ASCENDING_RAY_EPS, DEGENERATE_PANEL_EPS};

/// Errors produced while evaluating reception.
#[derive(Debug, Error)]
pub enum ReceptionError {
    #[error("degenerate panel: vertices are collinear (cross-product norm {cross_norm:e} m²)")]
    DegeneratePanel { cross_norm: f64 },
    #[error("panel {index}: {source}")]
    PanelAt {
        index: usize,
        source: Box<ReceptionError>,
    },
    #[error("no panels in the selected region")]
    EmptyRegion,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Which surface the panel vertices are taken from.
#[derive(Debug, Clone, Copy)]
pub enum SurfaceKind<'a> {
    /// Reference sphere: vertices at the nodes' reference positions.
    Sphere,
    /// Adjusted working surface: vertices at the realized positions from
    /// the solution; nodes outside the aperture stay at their reference
    /// positions.
    Working(&'a AdjustmentSolution),
}

impl SurfaceKind<'_> {
    pub fn label(&self) -> &'static str {
        match self {
            SurfaceKind::Sphere => "sphere",
            SurfaceKind::Working(_) => "working",
        }
    }
}

/// Panel subset to evaluate (and the efficiency denominator).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Panels whose three vertices all fall inside the aperture.
    Aperture,
    /// Every panel of the mesh.
    All,
}

/// Reflection outcome for one panel, in the aligned frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PanelReflection {
    pub panel_index: usize,
    pub hit: bool,
    /// Unit panel normal, oriented toward positive z.
    pub normal: Vec3,
    /// Unit direction of the reflected signal.
    pub reflected: Vec3,
    /// Footprint on the focal plane; absent when the reflected ray never
    /// ascends to it.
    #[serde(
        rename = "projected_vertices",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub projected: Option<Triangle2D>,
}

/// Aggregate reception over a panel region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReceptionReport {
    pub surface_label: String,
    pub total_panels: usize,
    pub hit_panels: usize,
    /// `hit_panels / total_panels`.
    pub efficiency: f64,
    /// Sorted by panel index.
    pub per_panel: Vec<PanelReflection>,
}

/// Relative improvement of one report over a baseline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImprovementSummary {
    pub sphere_efficiency: f64,
    pub working_efficiency: f64,
    /// `(working/sphere - 1) · 100`; `None` when the baseline efficiency
    /// is zero and the ratio is undefined.
    pub improvement_percent: Option<f64>,
}

/// Unit normal of a triangular panel, oriented so its z component is
/// non-negative (panels face the sky in the aligned frame; vertex winding
/// carries no meaning in the input data).
pub fn panel_normal(vertices: [Vec3; 3]) -> Result<Vec3, ReceptionError> {
    let cross = (vertices[1] - vertices[0]).cross(vertices[2] - vertices[0]);
    let cross_norm = cross.norm();
    if cross_norm <= DEGENERATE_PANEL_EPS {
        return Err(ReceptionError::DegeneratePanel { cross_norm });
    }
    let n = cross * (1.0 / cross_norm);
    Ok(if n.z < 0.0 { -n } else { n })
}

/// Projects a panel's reflected signal onto the focal plane.
///
/// Returns `None` when the reflected ray is horizontal or descending and
/// therefore never reaches the plane; those panels count as misses.
pub fn project_panel(
    vertices: [Vec3; 3],
    constants: &TelescopeConstants,
) -> Result<(Vec3, Vec3, Option<Triangle2D>), ReceptionError> {
    let normal = panel_normal(vertices)?;
    let reflected = reflect_unit_z(normal)?;
    if reflected.z <= ASCENDING_RAY_EPS {
        return Ok((normal, reflected, None));
    }
    let plane_z = constants.focal_plane_z();
    let mut projected = [Vec3::ZERO; 3];
    for (slot, vertex) in projected.iter_mut().zip(vertices) {
        *slot = line_plane_intersect(vertex, reflected, plane_z)?;
    }
    let triangle = Triangle2D::new(projected[0].xy(), projected[1].xy(), projected[2].xy());
    Ok((normal, reflected, Some(triangle)))
}

/// True iff the projected footprint overlaps the cabin's effective disk,
/// centered on the aligned-frame axis.
pub fn panel_hits_cabin(projected: &Triangle2D, cabin_radius: f64) -> bool {
    disk_triangle_overlap(projected, cabin_radius)
}

/// Evaluates reception for every panel in the selected region and
/// aggregates the hit ratio.
pub fn evaluate_reception(
    mesh: &Mesh,
    surface: SurfaceKind<'_>,
    frame: &RotationFrame,
    constants: &TelescopeConstants,
    region: Region,
) -> Result<ReceptionReport, ReceptionError> {
    let panel_indices: Vec<usize> = match region {
        Region::All => (0..mesh.panels().len()).collect(),
        Region::Aperture => aperture_filter(mesh, frame, constants.aperture_diameter).panel_indices,
    };
    if panel_indices.is_empty() {
        return Err(ReceptionError::EmptyRegion);
    }

    // Aligned-frame vertex positions for every node, whichever surface.
    let positions: BTreeMap<&str, Vec3> = mesh
        .nodes()
        .map(|node| {
            let aligned = match surface {
                SurfaceKind::Sphere => frame.apply(node.position),
                SurfaceKind::Working(solution) => solution
                    .adjustment_for(&node.id)
                    .map(|adj| adj.realized)
                    .unwrap_or_else(|| frame.apply(node.position)),
            };
            (node.id.as_str(), aligned)
        })
        .collect();

    let per_panel: Vec<PanelReflection> = exec::try_map_slice(
        &panel_indices,
        |&index| -> Result<PanelReflection, ReceptionError> {
            let panel = &mesh.panels()[index];
            let vertices = [
                positions[panel.node_ids[0].as_str()],
                positions[panel.node_ids[1].as_str()],
                positions[panel.node_ids[2].as_str()],
            ];
            let (normal, reflected, projected) =
                project_panel(vertices, constants).map_err(|source| ReceptionError::PanelAt {
                    index,
                    source: Box::new(source),
                })?;
            let hit = projected
                .as_ref()
                .map(|tri| panel_hits_cabin(tri, constants.cabin_radius))
                .unwrap_or(false);
            Ok(PanelReflection {
                panel_index: index,
                hit,
                normal,
                reflected,
                projected,
            })
        },
    )?;

    let hit_panels = per_panel.iter().filter(|p| p.hit).count();
    let total_panels = per_panel.len();
    Ok(ReceptionReport {
        surface_label: surface.label().to_string(),
        total_panels,
        hit_panels,
        efficiency: hit_panels as f64 / total_panels as f64,
        per_panel,
    })
}

/// Compares two reception reports, reporting absolute efficiencies and
/// the relative improvement of `working` over `sphere`.
pub fn compare_reports(
    sphere: &ReceptionReport,
    working: &ReceptionReport,
) -> Result<ImprovementSummary, ReceptionError> {
    if sphere.total_panels == 0 || working.total_panels == 0 {
        return Err(ReceptionError::EmptyRegion);
    }
    let improvement_percent = if sphere.efficiency == 0.0 {
        None
    } else {
        Some((working.efficiency / sphere.efficiency - 1.0) * 100.0)
    };
    Ok(ImprovementSummary {
        sphere_efficiency: sphere.efficiency,
        working_efficiency: working.efficiency,
        improvement_percent,
    })
}

/// Plot data: one row per projected footprint, `panel_index,hit,ax,ay,bx,by,cx,cy`.
pub fn projected_triangles_csv(report: &ReceptionReport) -> String {
    use std::fmt::Write;
    let mut out = String::from("panel_index,hit,ax,ay,bx,by,cx,cy\n");
    for panel in &report.per_panel {
        if let Some(tri) = &panel.projected {
            writeln!(
                out,
                "{},{},{:.9},{:.9},{:.9},{:.9},{:.9},{:.9}",
                panel.panel_index,
                panel.hit as u8,
                tri.a.x,
                tri.a.y,
                tri.b.x,
                tri.b.y,
                tri.c.x,
                tri.c.y
            )
            .expect("string write");
        }
    }
    out
}

/// Plot data: the cabin circle sampled at `samples` points, `x,y` rows.
pub fn cabin_circle_csv(radius: f64, samples: usize) -> String {
    use std::fmt::Write;
    let mut out = String::from("x,y\n");
    for i in 0..=samples {
        let theta = 2.0 * std::f64::consts::PI * i as f64 / samples as f64;
        writeln!(
            out,
            "{:.9},{:.9}",
            radius * theta.cos(),
            radius * theta.sin()
        )
        .expect("string write");
    }
    out
}
