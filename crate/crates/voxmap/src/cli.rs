//! Command drivers behind the `voxmap` binary.
//!
//! Everything here is plain library code so the binary stays a thin argument
//! parser. Machine-readable summaries (one JSON line per scan, final
//! metrics) go to the supplied writer; human progress goes to stderr.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{GridConfig, OccupancyMap};
use crate::integrate::{insert_scan_clamped, ClampMode, ScanInsertReport};
use crate::io::{export_map, read_poses, read_velodyne_bin, to_world_scan, ExportFormat};
use crate::sensor::{SensorModelParams, UpdatePolicy};
use crate::validate::{
    density_validation_curve, ground_plane_experiment, GroundPlaneOutcome, GroundPlaneSpec,
    SphereScanSpec,
};

/// Fully resolved configuration of a map-building run. Defaults mirror the
/// reference parameter set: 0.2 m voxels, p_occ 0.7, p_free 0.4, clamp
/// [0.12, 0.97], gamma 32, resolutions 0.4 and 0.16 degrees.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub params: SensorModelParams,
    pub prior: f64,
    pub policy: UpdatePolicy,
    pub clamp_mode: ClampMode,
    pub input_dir: Option<PathBuf>,
    pub pose_file: Option<PathBuf>,
    /// Half-open frame range into the sorted input file list.
    pub frame_range: Option<(usize, usize)>,
    pub max_range: f64,
    pub output: Option<PathBuf>,
    pub format: ExportFormat,
    pub export_threshold: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: SensorModelParams::default(),
            prior: 0.5,
            policy: UpdatePolicy::Method2,
            clamp_mode: ClampMode::PerScan,
            input_dir: None,
            pose_file: None,
            frame_range: None,
            max_range: 80.0,
            output: None,
            format: ExportFormat::Csv,
            export_threshold: 0.5,
        }
    }
}

/// Totals over a whole build run.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct MapBuildSummary {
    pub frames: usize,
    pub rays_processed: usize,
    pub cells_touched: usize,
    pub hits: usize,
    pub misses: usize,
    pub clamped_cells: usize,
    pub map_cells: usize,
    pub exported_cells: Option<usize>,
}

#[derive(Serialize)]
struct ScanLine<'a> {
    scan: usize,
    file: &'a str,
    #[serde(flatten)]
    report: ScanInsertReport,
}

/// Sorted `.bin` files under `dir`.
fn list_point_files(dir: &Path) -> Result<Vec<PathBuf>> {
    if !dir.is_dir() {
        return Err(Error::MissingInput {
            path: dir.to_path_buf(),
        });
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "bin"))
        .collect();
    files.sort();
    Ok(files)
}

/// Builds an occupancy map from a directory of point files plus a pose file,
/// writing one JSON summary line per scan to `out`. Returns the run totals
/// and the finished map.
pub fn cmd_build_map(
    config: &RunConfig,
    out: &mut dyn Write,
) -> Result<(MapBuildSummary, OccupancyMap)> {
    config.params.validate()?;
    let input_dir = config.input_dir.as_ref().ok_or_else(|| {
        Error::InvalidConfig("build-map requires an input directory".into())
    })?;
    let pose_file = config.pose_file.as_ref().ok_or_else(|| {
        Error::InvalidConfig("build-map requires a pose file".into())
    })?;
    if !pose_file.exists() {
        return Err(Error::MissingInput {
            path: pose_file.clone(),
        });
    }

    let files = list_point_files(input_dir)?;
    let (start, end) = config.frame_range.unwrap_or((0, files.len()));
    if start > end || end > files.len() {
        return Err(Error::InvalidConfig(format!(
            "frame range {start}..{end} outside the {} available frames",
            files.len()
        )));
    }
    let frames = &files[start..end];

    let poses = read_poses(pose_file)?;
    if poses.len() < end {
        return Err(Error::FrameCountMismatch {
            frames: end,
            poses: poses.len(),
        });
    }

    let grid = GridConfig {
        voxel_size: config.params.voxel_size(),
        prior: config.prior,
    };
    let mut map = OccupancyMap::new(grid, config.params.p_min, config.params.p_max)?;
    let mut summary = MapBuildSummary {
        frames: frames.len(),
        ..MapBuildSummary::default()
    };

    for (index, (file, pose)) in frames.iter().zip(&poses[start..end]).enumerate() {
        let raw = read_velodyne_bin(file)?;
        let scan = to_world_scan(&raw, pose, config.max_range);
        let report = insert_scan_clamped(
            &mut map,
            &scan,
            config.policy,
            &config.params,
            config.clamp_mode,
        )?;
        summary.rays_processed += report.rays_processed;
        summary.cells_touched += report.cells_touched;
        summary.hits += report.hits;
        summary.misses += report.misses;
        summary.clamped_cells += report.clamped_cells;

        let line = ScanLine {
            scan: start + index,
            file: file.file_name().and_then(|n| n.to_str()).unwrap_or(""),
            report,
        };
        writeln!(out, "{}", serde_json::to_string(&line).expect("serializable"))
            .map_err(|e| Error::io("<stdout>", e))?;
        eprintln!(
            "[{}/{}] {} rays, {} cells",
            index + 1,
            frames.len(),
            report.rays_processed,
            report.cells_touched
        );
    }

    summary.map_cells = map.len();
    if let Some(path) = &config.output {
        let written = export_map(&map, config.export_threshold, config.format, path)?;
        summary.exported_cells = Some(written);
        eprintln!("wrote {written} cells to {}", path.display());
    }
    writeln!(
        out,
        "{}",
        serde_json::to_string(&summary).expect("serializable")
    )
    .map_err(|e| Error::io("<stdout>", e))?;
    Ok((summary, map))
}

/// Builds the map exactly like [`cmd_build_map`] and always writes the
/// export, which is mandatory here.
pub fn cmd_export(config: &RunConfig, out: &mut dyn Write) -> Result<MapBuildSummary> {
    if config.output.is_none() {
        return Err(Error::InvalidConfig(
            "export requires --output".into(),
        ));
    }
    cmd_build_map(config, out).map(|(summary, _)| summary)
}

/// Configuration of the model-validation run.
#[derive(Clone, Debug)]
pub struct DensityRunConfig {
    /// One curve file is written per voxel size.
    pub voxel_sizes: Vec<f64>,
    pub radius: f64,
    /// Defaults to half the voxel size.
    pub bin_width: Option<f64>,
    pub vertical_res_deg: f64,
    pub horizontal_res_deg: f64,
    /// Output files are `<prefix>_w<voxel>.csv`.
    pub output_prefix: PathBuf,
}

impl Default for DensityRunConfig {
    fn default() -> Self {
        Self {
            voxel_sizes: vec![0.8, 0.6],
            radius: 100.0,
            bin_width: None,
            vertical_res_deg: 0.4,
            horizontal_res_deg: 0.16,
            output_prefix: PathBuf::from("density_curve"),
        }
    }
}

/// Runs the sphere-scan validation for every configured voxel size and
/// writes one CSV per size. Returns (voxel size, path, bin count) tuples.
pub fn cmd_validate_density(
    config: &DensityRunConfig,
    out: &mut dyn Write,
) -> Result<Vec<(f64, PathBuf, usize)>> {
    if config.voxel_sizes.is_empty() {
        return Err(Error::InvalidConfig("no voxel sizes requested".into()));
    }
    let spec = SphereScanSpec::full_sphere(
        config.radius,
        config.vertical_res_deg.to_radians(),
        config.horizontal_res_deg.to_radians(),
    );
    spec.validate()?;

    let mut written = Vec::new();
    for &voxel_size in &config.voxel_sizes {
        if voxel_size <= 0.0 || voxel_size.is_nan() {
            return Err(Error::InvalidConfig(format!(
                "voxel size must be positive, got {voxel_size}"
            )));
        }
        let bin_width = config.bin_width.unwrap_or(voxel_size / 2.0);
        eprintln!("sphere scan at voxel size {voxel_size} ...");
        let curve = density_validation_curve(&spec, voxel_size, bin_width)?;
        let path = PathBuf::from(format!(
            "{}_w{voxel_size}.csv",
            config.output_prefix.display()
        ));
        curve.write_csv(&path)?;
        writeln!(
            out,
            "{}",
            serde_json::to_string(&serde_json::json!({
                "voxel_size": voxel_size,
                "bins": curve.bins.len(),
                "path": path.display().to_string(),
            }))
            .expect("serializable")
        )
        .map_err(|e| Error::io("<stdout>", e))?;
        written.push((voxel_size, path, curve.bins.len()));
    }
    Ok(written)
}

/// Runs the ground-plane comparison for all three policies and prints the
/// metrics table to `out`.
pub fn cmd_ground_plane(
    spec: &GroundPlaneSpec,
    params: &SensorModelParams,
    out: &mut dyn Write,
) -> Result<GroundPlaneOutcome> {
    let outcome = ground_plane_experiment(&UpdatePolicy::ALL, spec, params)?;
    writeln!(
        out,
        "{:<10} {:>12} {:>10} {:>8} {:>9} {:>10}",
        "policy", "plane_cells", "occupied", "holes", "unknown", "occ_frac"
    )
    .map_err(|e| Error::io("<stdout>", e))?;
    for m in &outcome.metrics {
        writeln!(
            out,
            "{:<10} {:>12} {:>10} {:>8} {:>9} {:>10.4}",
            m.policy, m.plane_cells, m.occupied, m.holes, m.unknown, m.occupied_fraction
        )
        .map_err(|e| Error::io("<stdout>", e))?;
    }
    Ok(outcome)
}
