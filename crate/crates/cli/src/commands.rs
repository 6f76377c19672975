//! Subcommand implementations. Every command computes all its outputs in
//! memory first and only then writes files, so a failure never leaves a
//! partial output set behind.

use std::fs;
use std::io::BufReader;
use std::path::PathBuf;

use anyhow::{Context, Result};
use serde::Serialize;

use reflector_core::geometry::{build_rotation, RotationFrame};
use reflector_core::mesh::{
    generate_synthetic_mesh, load_nodes, load_panels, nodes_to_csv, panels_to_csv, validate_mesh,
    Mesh,
};
use reflector_core::reception::{
    cabin_circle_csv, compare_reports, evaluate_reception, projected_triangles_csv,
    ReceptionReport, Region, SurfaceKind,
};
use reflector_core::shape::{
    export_adjustments, fit_parabola, loss, solve_proportion, AdjustmentSolution, DEFAULT_LOSS_STEP,
};

use crate::config::{ensure_out_dir, MeshSource, RegionMode, RunConfig};

/// Pending file writes, flushed together once a command has succeeded.
struct Outputs {
    files: Vec<(PathBuf, String)>,
}

impl Outputs {
    fn new() -> Self {
        Outputs { files: Vec::new() }
    }

    fn add_json<T: Serialize>(&mut self, path: PathBuf, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value).context("output stage: serialize")?;
        text.push('\n');
        self.files.push((path, text));
        Ok(())
    }

    fn add_text(&mut self, path: PathBuf, text: String) {
        self.files.push((path, text));
    }

    fn write_all(self) -> Result<()> {
        for (path, text) in self.files {
            fs::write(&path, text)
                .with_context(|| format!("output stage: cannot write {}", path.display()))?;
            println!("wrote {}", path.display());
        }
        Ok(())
    }
}

fn load_mesh(config: &RunConfig) -> Result<Mesh> {
    match &config.mesh_source {
        MeshSource::Synthetic(params) => {
            let params = *params;
            generate_synthetic_mesh(&params)
                .map_err(|e| anyhow::anyhow!(e))
                .context("mesh stage: synthetic generation failed")
        }
        MeshSource::Files { nodes, panels } => {
            let node_rows = load_nodes(BufReader::new(
                fs::File::open(nodes)
                    .with_context(|| format!("mesh stage: cannot open {}", nodes.display()))?,
            ))
            .map_err(|e| anyhow::anyhow!(e))
            .with_context(|| format!("mesh stage: parsing {}", nodes.display()))?;
            let panel_rows = load_panels(BufReader::new(
                fs::File::open(panels)
                    .with_context(|| format!("mesh stage: cannot open {}", panels.display()))?,
            ))
            .map_err(|e| anyhow::anyhow!(e))
            .with_context(|| format!("mesh stage: parsing {}", panels.display()))?;
            Mesh::new(node_rows, panel_rows, config.constants.radius)
                .map_err(|e| anyhow::anyhow!(e))
                .context("mesh stage: assembly failed")
        }
    }
}

fn build_frame(config: &RunConfig) -> Result<RotationFrame> {
    build_rotation(config.source)
        .map_err(|e| anyhow::anyhow!(e))
        .context("frame stage: rotation construction failed")
}

fn solve(config: &RunConfig, mesh: &Mesh, frame: &RotationFrame) -> Result<AdjustmentSolution> {
    let coeffs = fit_parabola(&config.constants)
        .map_err(|e| anyhow::anyhow!(e))
        .context("fit stage: parabola fit failed")?;
    solve_proportion(mesh, &coeffs, frame, &config.constants, config.resolution)
        .map_err(|e| anyhow::anyhow!(e))
        .context("adjust stage: proportion solve failed")
}

#[derive(Serialize)]
struct ParabolaDoc {
    a: f64,
    c: f64,
    loss: f64,
    #[serde(rename = "R")]
    radius: f64,
    #[serde(rename = "F")]
    focal_distance: f64,
}

pub fn cmd_fit(config: &RunConfig) -> Result<()> {
    ensure_out_dir(&config.out_dir)?;
    let coeffs = fit_parabola(&config.constants)
        .map_err(|e| anyhow::anyhow!(e))
        .context("fit stage: parabola fit failed")?;
    let loss_value = loss(&coeffs, &config.constants, DEFAULT_LOSS_STEP);
    println!(
        "parabola: a = {:.10} 1/m, c = {:.6} m, loss = {:.6}",
        coeffs.a, coeffs.c, loss_value
    );

    let mut outputs = Outputs::new();
    outputs.add_json(
        config.out_path("parabola.json"),
        &ParabolaDoc {
            a: coeffs.a,
            c: coeffs.c,
            loss: loss_value,
            radius: config.constants.radius,
            focal_distance: config.constants.focal_distance,
        },
    )?;
    outputs.write_all()
}

pub fn cmd_gen_mesh(config: &RunConfig) -> Result<()> {
    ensure_out_dir(&config.out_dir)?;
    let params = match &config.mesh_source {
        MeshSource::Synthetic(params) => *params,
        MeshSource::Files { .. } => {
            anyhow::bail!("mesh stage: gen-mesh generates synthetic meshes; drop --nodes/--panels")
        }
    };
    let mesh = generate_synthetic_mesh(&params)
        .map_err(|e| anyhow::anyhow!(e))
        .context("mesh stage: synthetic generation failed")?;
    let report = validate_mesh(&mesh, &config.constants);
    anyhow::ensure!(
        report.is_empty(),
        "mesh stage: generated mesh fails validation: {report:?}"
    );
    println!(
        "mesh: {} nodes, {} panels, {} edges",
        mesh.node_count(),
        mesh.panels().len(),
        mesh.edge_count()
    );

    let mut outputs = Outputs::new();
    outputs.add_text(config.out_path("nodes.csv"), nodes_to_csv(mesh.nodes()));
    outputs.add_text(config.out_path("panels.csv"), panels_to_csv(mesh.panels()));
    outputs.write_all()
}

#[derive(Serialize)]
struct SolutionCounts {
    aperture_nodes: usize,
    aperture_edges: usize,
}

#[derive(Serialize)]
struct SolutionDoc {
    proportion: f64,
    max_edge_ratio: f64,
    stroke_min: f64,
    stroke_max: f64,
    counts: SolutionCounts,
}

pub fn cmd_adjust(config: &RunConfig) -> Result<()> {
    ensure_out_dir(&config.out_dir)?;
    let mesh = load_mesh(config)?;
    let frame = build_frame(config)?;
    let solution = solve(config, &mesh, &frame)?;
    println!(
        "adjustment: p = {:.4}, max edge ratio = {:.4}%, strokes [{:.4}, {:.4}] m, {} nodes",
        solution.proportion,
        solution.max_edge_ratio * 100.0,
        solution.stroke_range.0,
        solution.stroke_range.1,
        solution.aperture_node_count
    );

    let mut outputs = Outputs::new();
    outputs.add_text(
        config.out_path("result.csv"),
        export_adjustments(&solution, &frame),
    );
    outputs.add_json(
        config.out_path("solution.json"),
        &SolutionDoc {
            proportion: solution.proportion,
            max_edge_ratio: solution.max_edge_ratio,
            stroke_min: solution.stroke_range.0,
            stroke_max: solution.stroke_range.1,
            counts: SolutionCounts {
                aperture_nodes: solution.aperture_node_count,
                aperture_edges: solution.aperture_edge_count,
            },
        },
    )?;
    outputs.write_all()
}

#[derive(Serialize)]
struct ComparisonBlock {
    sphere_region: &'static str,
    working_region: &'static str,
    sphere_hit_panels: usize,
    sphere_total_panels: usize,
    working_hit_panels: usize,
    working_total_panels: usize,
    sphere_efficiency: f64,
    working_efficiency: f64,
    improvement_percent: Option<f64>,
}

fn comparison_block(
    sphere: &ReceptionReport,
    sphere_region: &'static str,
    working: &ReceptionReport,
    working_region: &'static str,
) -> Result<ComparisonBlock> {
    let summary = compare_reports(sphere, working)
        .map_err(|e| anyhow::anyhow!(e))
        .context("compare stage: comparison failed")?;
    Ok(ComparisonBlock {
        sphere_region,
        working_region,
        sphere_hit_panels: sphere.hit_panels,
        sphere_total_panels: sphere.total_panels,
        working_hit_panels: working.hit_panels,
        working_total_panels: working.total_panels,
        sphere_efficiency: summary.sphere_efficiency,
        working_efficiency: summary.working_efficiency,
        improvement_percent: summary.improvement_percent,
    })
}

#[derive(Serialize)]
struct ComparisonDoc {
    cabin_radius: f64,
    cabin_radius_mode: String,
    /// Sphere over all panels vs working over aperture panels.
    mixed_regions: ComparisonBlock,
    /// Both surfaces over aperture panels.
    like_for_like: ComparisonBlock,
}

pub fn cmd_evaluate(config: &RunConfig) -> Result<()> {
    ensure_out_dir(&config.out_dir)?;
    let mesh = load_mesh(config)?;
    let frame = build_frame(config)?;
    let solution = solve(config, &mesh, &frame)?;

    let eval = |surface: SurfaceKind<'_>, region: Region| {
        evaluate_reception(&mesh, surface, &frame, &config.constants, region)
            .map_err(|e| anyhow::anyhow!(e))
            .context("reception stage: evaluation failed")
    };
    let sphere_all = eval(SurfaceKind::Sphere, Region::All)?;
    let sphere_aperture = eval(SurfaceKind::Sphere, Region::Aperture)?;
    let working_aperture = eval(SurfaceKind::Working(&solution), Region::Aperture)?;

    let (sphere_report, working_report) = match config.region {
        RegionMode::Mixed => (&sphere_all, &working_aperture),
        RegionMode::Aperture => (&sphere_aperture, &working_aperture),
        RegionMode::All => (
            &sphere_all,
            &eval(SurfaceKind::Working(&solution), Region::All)?,
        ),
    };
    let comparison = ComparisonDoc {
        cabin_radius: config.constants.cabin_radius,
        cabin_radius_mode: config.cabin_radius_mode.name().to_string(),
        mixed_regions: comparison_block(&sphere_all, "all", &working_aperture, "aperture")?,
        like_for_like: comparison_block(
            &sphere_aperture,
            "aperture",
            &working_aperture,
            "aperture",
        )?,
    };
    println!(
        "reception: sphere {}/{} = {:.2}%, working {}/{} = {:.2}%",
        sphere_report.hit_panels,
        sphere_report.total_panels,
        sphere_report.efficiency * 100.0,
        working_report.hit_panels,
        working_report.total_panels,
        working_report.efficiency * 100.0,
    );
    match comparison.like_for_like.improvement_percent {
        Some(p) => println!("like-for-like improvement: {p:+.1}%"),
        None => println!("like-for-like improvement: undefined (sphere efficiency is zero)"),
    }

    let mut outputs = Outputs::new();
    outputs.add_json(config.out_path("reception_sphere.json"), sphere_report)?;
    outputs.add_json(config.out_path("reception_working.json"), working_report)?;
    outputs.add_json(config.out_path("comparison.json"), &comparison)?;
    outputs.add_text(
        config.out_path("plot_projected_sphere.csv"),
        projected_triangles_csv(sphere_report),
    );
    outputs.add_text(
        config.out_path("plot_projected_working.csv"),
        projected_triangles_csv(working_report),
    );
    outputs.add_text(
        config.out_path("plot_cabin_circle.csv"),
        cabin_circle_csv(config.constants.cabin_radius, 360),
    );
    outputs.write_all()
}

pub fn cmd_compare(
    sphere_path: &PathBuf,
    working_path: &PathBuf,
    out_dir: Option<&PathBuf>,
) -> Result<()> {
    let read = |path: &PathBuf| -> Result<ReceptionReport> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("compare stage: cannot read {}", path.display()))?;
        serde_json::from_str(&text)
            .with_context(|| format!("compare stage: cannot parse {}", path.display()))
    };
    let sphere = read(sphere_path)?;
    let working = read(working_path)?;
    let summary = compare_reports(&sphere, &working)
        .map_err(|e| anyhow::anyhow!(e))
        .context("compare stage: comparison failed")?;
    println!(
        "sphere ({}): {}/{} = {:.2}%",
        sphere.surface_label,
        sphere.hit_panels,
        sphere.total_panels,
        sphere.efficiency * 100.0
    );
    println!(
        "working ({}): {}/{} = {:.2}%",
        working.surface_label,
        working.hit_panels,
        working.total_panels,
        working.efficiency * 100.0
    );
    match summary.improvement_percent {
        Some(p) => println!("improvement: {p:+.1}%"),
        None => println!("improvement: undefined (sphere efficiency is zero)"),
    }
    if let Some(dir) = out_dir {
        ensure_out_dir(dir)?;
        let mut outputs = Outputs::new();
        outputs.add_json(dir.join("comparison.json"), &summary)?;
        outputs.write_all()?;
    }
    Ok(())
}
