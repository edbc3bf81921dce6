//! Thin command-line front end; all logic lives in the library's `cli`
//! module.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use voxmap::cli::{
    cmd_build_map, cmd_export, cmd_ground_plane, cmd_validate_density, DensityRunConfig,
    RunConfig,
};
use voxmap::density::{DensityParams, SensorAngularSpec};
use voxmap::sensor::SensorModelParams;
use voxmap::validate::GroundPlaneSpec;

#[derive(Parser)]
#[command(
    name = "voxmap",
    about = "Sparse voxel occupancy mapping from range-sensor scans",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an occupancy map from a directory of .bin scans and a pose file.
    BuildMap(BuildArgs),
    /// Validate the ray-density model against a synthetic sphere scan.
    ValidateDensity(DensityArgs),
    /// Compare the update policies over a simulated ground plane.
    GroundPlane(GroundArgs),
    /// Build a map and export the occupied cells (requires --output).
    Export(BuildArgs),
}

/// Sensor-model flags shared by the map-building commands.
#[derive(Args)]
struct SensorArgs {
    /// Voxel edge length in meters.
    #[arg(long, default_value_t = 0.2)]
    voxel_size: f64,
    /// Observation probability of a full-strength hit.
    #[arg(long, default_value_t = 0.7)]
    p_occ: f64,
    /// Observation probability of a full-diagonal miss.
    #[arg(long, default_value_t = 0.4)]
    p_free: f64,
    /// Lower occupancy clamp.
    #[arg(long, default_value_t = 0.12)]
    clamp_min: f64,
    /// Upper occupancy clamp.
    #[arg(long, default_value_t = 0.97)]
    clamp_max: f64,
    /// Ray-count scale of the distance weight.
    #[arg(long, default_value_t = 32.0)]
    gamma: f64,
    /// Vertical angular resolution, degrees.
    #[arg(long, default_value_t = 0.4)]
    vres_deg: f64,
    /// Horizontal angular resolution, degrees.
    #[arg(long, default_value_t = 0.16)]
    hres_deg: f64,
    /// Occupancy prior of unobserved cells.
    #[arg(long, default_value_t = 0.5)]
    prior: f64,
}

impl SensorArgs {
    fn to_params(&self) -> anyhow::Result<SensorModelParams> {
        let spec = SensorAngularSpec::from_degrees(self.vres_deg, self.hres_deg)?;
        let density = DensityParams::new(spec, self.voxel_size, self.gamma)?;
        let params = SensorModelParams {
            p_occ: self.p_occ,
            p_free: self.p_free,
            p_min: self.clamp_min,
            p_max: self.clamp_max,
            density,
        };
        params.validate()?;
        Ok(params)
    }
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    sensor: SensorArgs,
    /// Directory of .bin point files (sorted by name).
    #[arg(long)]
    input: PathBuf,
    /// Pose file: one row-major 3x4 [R|t] per line.
    #[arg(long)]
    poses: PathBuf,
    /// Half-open frame range A..B into the sorted file list.
    #[arg(long)]
    frames: Option<String>,
    /// Update policy: baseline, m1 or m2.
    #[arg(long, default_value = "m2")]
    method: String,
    /// Clamp application: per-scan or per-measurement.
    #[arg(long, default_value = "per-scan")]
    clamp_mode: String,
    /// Ranges beyond this become max-range misses, meters.
    #[arg(long, default_value_t = 80.0)]
    max_range: f64,
    /// Occupied-cell export path.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Export format: csv or ply.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Occupancy threshold for the export.
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
}

impl BuildArgs {
    fn to_config(&self) -> anyhow::Result<RunConfig> {
        Ok(RunConfig {
            params: self.sensor.to_params()?,
            prior: self.sensor.prior,
            policy: self.method.parse()?,
            clamp_mode: self.clamp_mode.parse()?,
            input_dir: Some(self.input.clone()),
            pose_file: Some(self.poses.clone()),
            frame_range: self.frames.as_deref().map(parse_range).transpose()?,
            max_range: self.max_range,
            output: self.output.clone(),
            format: self.format.parse()?,
            export_threshold: self.threshold,
        })
    }
}

#[derive(Args)]
struct DensityArgs {
    /// Voxel sizes to validate; repeat the flag for several curves.
    #[arg(long = "voxel-size", default_values_t = [0.8, 0.6])]
    voxel_sizes: Vec<f64>,
    /// Sphere radius, meters.
    #[arg(long, default_value_t = 100.0)]
    radius: f64,
    /// Distance bin width; defaults to half the voxel size.
    #[arg(long)]
    bin_width: Option<f64>,
    /// Vertical angular resolution, degrees.
    #[arg(long, default_value_t = 0.4)]
    vres_deg: f64,
    /// Horizontal angular resolution, degrees.
    #[arg(long, default_value_t = 0.16)]
    hres_deg: f64,
    /// Output prefix; files are <prefix>_w<voxel>.csv.
    #[arg(long, default_value = "density_curve")]
    output: PathBuf,
}

#[derive(Args)]
struct GroundArgs {
    #[command(flatten)]
    sensor: SensorArgs,
    /// Number of poses along the line.
    #[arg(long, default_value_t = 5)]
    scans: usize,
    /// Pose spacing, meters.
    #[arg(long, default_value_t = 2.0)]
    spacing: f64,
    /// Sensor height above the plane, meters.
    #[arg(long, default_value_t = 1.7)]
    sensor_height: f64,
    /// Evaluation radius around the pose centroid, meters.
    #[arg(long, default_value_t = 30.0)]
    eval_radius: f64,
    /// Downward fov lower bound, degrees (negative).
    #[arg(long, default_value_t = -24.8)]
    fov_min_deg: f64,
    /// Downward fov upper bound, degrees (negative).
    #[arg(long, default_value_t = -2.0)]
    fov_max_deg: f64,
}

fn parse_range(text: &str) -> anyhow::Result<(usize, usize)> {
    let Some((a, b)) = text.split_once("..") else {
        bail!("frame range must look like A..B, got '{text}'");
    };
    let start: usize = a.parse().with_context(|| format!("bad range start '{a}'"))?;
    let end: usize = b.parse().with_context(|| format!("bad range end '{b}'"))?;
    Ok((start, end))
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();

    match cli.command {
        Command::BuildMap(args) => {
            let config = args.to_config()?;
            let (summary, _) = cmd_build_map(&config, &mut out)?;
            eprintln!(
                "done: {} frames, {} rays, {} map cells",
                summary.frames, summary.rays_processed, summary.map_cells
            );
        }
        Command::Export(args) => {
            let config = args.to_config()?;
            let summary = cmd_export(&config, &mut out)?;
            eprintln!(
                "done: {} frames, exported {} cells",
                summary.frames,
                summary.exported_cells.unwrap_or(0)
            );
        }
        Command::ValidateDensity(args) => {
            let config = DensityRunConfig {
                voxel_sizes: args.voxel_sizes,
                radius: args.radius,
                bin_width: args.bin_width,
                vertical_res_deg: args.vres_deg,
                horizontal_res_deg: args.hres_deg,
                output_prefix: args.output,
            };
            let written = cmd_validate_density(&config, &mut out)?;
            for (voxel, path, bins) in written {
                eprintln!("voxel {voxel}: {bins} bins -> {}", path.display());
            }
        }
        Command::GroundPlane(args) => {
            let params = args.sensor.to_params()?;
            let spec = GroundPlaneSpec {
                sensor_height: args.sensor_height,
                vertical_fov: (args.fov_min_deg.to_radians(), args.fov_max_deg.to_radians()),
                scan_count: args.scans,
                pose_spacing: args.spacing,
                eval_radius: args.eval_radius,
                ..GroundPlaneSpec::default()
            };
            cmd_ground_plane(&spec, &params, &mut out)?;
        }
    }
    out.flush()?;
    Ok(())
}
