//! Run configuration: defaults, optional JSON config file, and explicit
//! command-line flags, in increasing order of precedence.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde::Deserialize;

use reflector_core::geometry::AzEl;
use reflector_core::mesh::SyntheticMeshParams;
use reflector_core::shape::TelescopeConstants;
use reflector_core::tolerances::PROPORTION_RESOLUTION;

/// Interpretation of the cabin's 1 m receiving extent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
pub enum CabinRadiusMode {
    /// 1 m is the disk diameter: radius 0.5 m (default).
    #[value(name = "diameter-1m")]
    #[serde(rename = "diameter-1m")]
    Diameter1m,
    /// 1 m is the disk radius: radius 1.0 m.
    #[value(name = "radius-1m")]
    #[serde(rename = "radius-1m")]
    Radius1m,
}

impl CabinRadiusMode {
    pub fn name(self) -> &'static str {
        match self {
            CabinRadiusMode::Diameter1m => "diameter-1m",
            CabinRadiusMode::Radius1m => "radius-1m",
        }
    }

    pub fn radius(self) -> f64 {
        match self {
            CabinRadiusMode::Diameter1m => 0.5,
            CabinRadiusMode::Radius1m => 1.0,
        }
    }
}

/// Which panel sets the reception reports cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegionMode {
    /// Sphere report over all panels, working report over the aperture.
    Mixed,
    /// Both reports over aperture panels only.
    Aperture,
    /// Both reports over all panels.
    All,
}

/// Flags shared by every subcommand. Each flag overrides the matching
/// field of the optional JSON config, which overrides the built-in
/// defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Optional JSON config file; explicit flags override its values.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Reference sphere radius in meters [default: 300.4].
    #[arg(long = "R", value_name = "METERS", allow_negative_numbers = true)]
    pub radius: Option<f64>,

    /// Focal distance as a fraction of the radius [default: 0.466].
    #[arg(long = "F-ratio", value_name = "RATIO", allow_negative_numbers = true)]
    pub f_ratio: Option<f64>,

    /// Source azimuth in degrees [default: 36.795].
    #[arg(long, value_name = "DEGREES", allow_negative_numbers = true)]
    pub alpha: Option<f64>,

    /// Source elevation in degrees [default: 78.169].
    #[arg(long, value_name = "DEGREES", allow_negative_numbers = true)]
    pub beta: Option<f64>,

    /// Illuminated aperture diameter in meters [default: 300].
    #[arg(
        long = "aperture-diameter",
        value_name = "METERS",
        allow_negative_numbers = true
    )]
    pub aperture_diameter: Option<f64>,

    /// Actuator stroke limit in meters [default: 0.6].
    #[arg(
        long = "stroke-limit",
        value_name = "METERS",
        allow_negative_numbers = true
    )]
    pub stroke_limit: Option<f64>,

    /// Relative edge-length change limit [default: 0.0007].
    #[arg(
        long = "edge-ratio-limit",
        value_name = "RATIO",
        allow_negative_numbers = true
    )]
    pub edge_ratio_limit: Option<f64>,

    /// Cabin disk convention [default: diameter-1m].
    #[arg(long = "cabin-radius-mode", value_enum)]
    pub cabin_radius_mode: Option<CabinRadiusMode>,

    /// Node table CSV (requires --panels).
    #[arg(long, value_name = "PATH")]
    pub nodes: Option<PathBuf>,

    /// Panel table CSV (requires --nodes).
    #[arg(long, value_name = "PATH")]
    pub panels: Option<PathBuf>,

    /// Use the synthetic cap mesh instead of input files.
    #[arg(long)]
    pub synthetic: bool,

    /// Synthetic mesh subdivision depth [default: 3].
    #[arg(long, value_name = "N")]
    pub subdivisions: Option<u32>,

    /// Synthetic cap half-angle in degrees [default: 56.3].
    #[arg(long, value_name = "DEGREES", allow_negative_numbers = true)]
    pub cap: Option<f64>,

    /// Keep the whole synthetic sphere instead of cropping to the cap.
    #[arg(long = "full-sphere")]
    pub full_sphere: bool,

    /// Output directory [default: .].
    #[arg(long = "out-dir", value_name = "DIR")]
    pub out_dir: Option<PathBuf>,

    /// Report region [default: mixed].
    #[arg(long, value_enum)]
    pub region: Option<RegionMode>,

    /// Bisection resolution for the interpolation proportion [default: 0.001].
    #[arg(long, value_name = "STEP")]
    pub resolution: Option<f64>,
}

/// JSON config file contents; every field optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
struct FileConfig {
    radius: Option<f64>,
    f_ratio: Option<f64>,
    alpha: Option<f64>,
    beta: Option<f64>,
    aperture_diameter: Option<f64>,
    stroke_limit: Option<f64>,
    edge_ratio_limit: Option<f64>,
    cabin_radius_mode: Option<CabinRadiusMode>,
    nodes: Option<PathBuf>,
    panels: Option<PathBuf>,
    synthetic: Option<bool>,
    subdivisions: Option<u32>,
    cap: Option<f64>,
    full_sphere: Option<bool>,
    out_dir: Option<PathBuf>,
    region: Option<RegionMode>,
    resolution: Option<f64>,
}

/// Where the mesh comes from.
#[derive(Debug, Clone)]
pub enum MeshSource {
    Files { nodes: PathBuf, panels: PathBuf },
    Synthetic(SyntheticMeshParams),
}

/// Fully resolved configuration for one command run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub constants: TelescopeConstants,
    pub source: AzEl,
    pub mesh_source: MeshSource,
    pub out_dir: PathBuf,
    pub cabin_radius_mode: CabinRadiusMode,
    pub region: RegionMode,
    pub resolution: f64,
}

impl RunConfig {
    /// Resolves flags against the optional config file and validates the
    /// result.
    pub fn resolve(args: &CommonArgs) -> Result<Self> {
        let file: FileConfig = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("config stage: cannot read {}", path.display()))?;
                serde_json::from_str(&text)
                    .with_context(|| format!("config stage: cannot parse {}", path.display()))?
            }
            None => FileConfig::default(),
        };

        let radius = args.radius.or(file.radius).unwrap_or(300.4);
        let f_ratio = args.f_ratio.or(file.f_ratio).unwrap_or(0.466);
        let cabin_radius_mode = args
            .cabin_radius_mode
            .or(file.cabin_radius_mode)
            .unwrap_or(CabinRadiusMode::Diameter1m);
        let constants = TelescopeConstants {
            radius,
            focal_distance: f_ratio * radius,
            aperture_diameter: args
                .aperture_diameter
                .or(file.aperture_diameter)
                .unwrap_or(300.0),
            stroke_limit: args.stroke_limit.or(file.stroke_limit).unwrap_or(0.6),
            edge_ratio_limit: args
                .edge_ratio_limit
                .or(file.edge_ratio_limit)
                .unwrap_or(0.0007),
            cabin_radius: cabin_radius_mode.radius(),
        };
        constants
            .validate()
            .map_err(|e| anyhow::anyhow!(e))
            .context("config stage: invalid telescope constants")?;

        let alpha = args.alpha.or(file.alpha).unwrap_or(36.795);
        let beta = args.beta.or(file.beta).unwrap_or(78.169);
        let source = AzEl::new(alpha, beta)
            .map_err(|e| anyhow::anyhow!(e))
            .context("config stage: invalid source direction")?;

        let synthetic = args.synthetic || file.synthetic.unwrap_or(false);
        let nodes = args.nodes.clone().or(file.nodes);
        let panels = args.panels.clone().or(file.panels);
        let mesh_source = match (synthetic, nodes, panels) {
            (true, _, _) | (false, None, None) => MeshSource::Synthetic(SyntheticMeshParams {
                radius,
                cap_half_angle_deg: args.cap.or(file.cap).unwrap_or(56.3),
                subdivisions: args.subdivisions.or(file.subdivisions).unwrap_or(3),
                full_sphere: args.full_sphere || file.full_sphere.unwrap_or(false),
            }),
            (false, Some(nodes), Some(panels)) => {
                for path in [&nodes, &panels] {
                    if !path.exists() {
                        bail!("config stage: mesh file not found: {}", path.display());
                    }
                }
                MeshSource::Files { nodes, panels }
            }
            (false, Some(_), None) | (false, None, Some(_)) => {
                bail!("config stage: --nodes and --panels must be given together")
            }
        };

        let resolution = args
            .resolution
            .or(file.resolution)
            .unwrap_or(PROPORTION_RESOLUTION);
        if !(resolution > 0.0 && resolution < 1.0) {
            bail!("config stage: resolution must be in (0, 1), got {resolution}");
        }

        Ok(RunConfig {
            constants,
            source,
            mesh_source,
            out_dir: args
                .out_dir
                .clone()
                .or(file.out_dir)
                .unwrap_or_else(|| PathBuf::from(".")),
            cabin_radius_mode,
            region: args.region.or(file.region).unwrap_or(RegionMode::Mixed),
            resolution,
        })
    }

    pub fn out_path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }
}

/// Creates the output directory if needed and checks it is writable.
pub fn ensure_out_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("output stage: cannot create {}", dir.display()))?;
    let probe = dir.join(".write-probe");
    std::fs::write(&probe, b"")
        .with_context(|| format!("output stage: {} is not writable", dir.display()))?;
    std::fs::remove_file(&probe).ok();
    Ok(())
}
