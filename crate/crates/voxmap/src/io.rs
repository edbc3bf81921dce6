//! File readers for real scans and exporters for finished maps.
//!
//! Point files follow the common automotive-lidar convention: consecutive
//! little-endian float32 quadruples (x, y, z, reflectance), no header. Poses
//! are text files with one 12-real row-major 3x4 `[R|t]` matrix per line.

use std::fs;
use std::io::Write;
use std::path::Path;

use nalgebra::{Matrix3, Point3, Vector3};

use crate::error::{Error, Result};
use crate::grid::{voxel_center, OccupancyMap, VoxelKey};
use crate::integrate::Scan;

/// One point in the sensor frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RawPoint {
    pub position: Point3<f32>,
    /// Carried through for completeness; the mapping core ignores it.
    pub reflectance: f32,
}

/// An unregistered scan as read from disk.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawScan {
    pub points: Vec<RawPoint>,
    /// Records dropped because a coordinate was NaN or infinite.
    pub skipped_non_finite: usize,
}

/// Rigid transform taking sensor-frame points to the world frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoseRecord {
    pub rotation: Matrix3<f64>,
    pub translation: Vector3<f64>,
}

impl PoseRecord {
    pub fn identity() -> Self {
        Self {
            rotation: Matrix3::identity(),
            translation: Vector3::zeros(),
        }
    }

    /// Frobenius deviation of `R^T R` from the identity.
    pub fn orthonormality_deviation(&self) -> f64 {
        (self.rotation.transpose() * self.rotation - Matrix3::identity()).norm()
    }

    pub fn validate(&self) -> Result<()> {
        let deviation = self.orthonormality_deviation();
        let det = self.rotation.determinant();
        if deviation > 1e-6 || (det - 1.0).abs() > 1e-6 {
            return Err(Error::PoseNotOrthonormal {
                path: Default::default(),
                line: 0,
                deviation: deviation.max((det - 1.0).abs()),
            });
        }
        Ok(())
    }

    pub fn transform_point(&self, p: &Point3<f64>) -> Point3<f64> {
        Point3::from(self.rotation * p.coords + self.translation)
    }
}

/// Reads a binary point file of little-endian float32 (x, y, z, reflectance)
/// records. Non-finite records are skipped and counted; a file length that is
/// not a multiple of 16 bytes is a format error reporting the offset of the
/// truncated record.
pub fn read_velodyne_bin(path: impl AsRef<Path>) -> Result<RawScan> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    if bytes.len() % 16 != 0 {
        return Err(Error::TruncatedPointFile {
            path: path.to_path_buf(),
            offset: (bytes.len() - bytes.len() % 16) as u64,
        });
    }
    let mut scan = RawScan {
        points: Vec::with_capacity(bytes.len() / 16),
        skipped_non_finite: 0,
    };
    for record in bytes.chunks_exact(16) {
        let f = |i: usize| f32::from_le_bytes(record[4 * i..4 * i + 4].try_into().unwrap());
        let (x, y, z, reflectance) = (f(0), f(1), f(2), f(3));
        if !(x.is_finite() && y.is_finite() && z.is_finite() && reflectance.is_finite()) {
            scan.skipped_non_finite += 1;
            continue;
        }
        scan.points.push(RawPoint {
            position: Point3::new(x, y, z),
            reflectance,
        });
    }
    Ok(scan)
}

/// Reads a pose file: one pose per non-empty line, 12 whitespace-separated
/// reals forming a row-major 3x4 `[R|t]`. Rotations are validated for
/// orthonormality.
pub fn read_poses(path: impl AsRef<Path>) -> Result<Vec<PoseRecord>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut poses = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let line_no = index + 1;
        if line.trim().is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 12 {
            return Err(Error::PoseParse {
                path: path.to_path_buf(),
                line: line_no,
                message: format!("expected 12 values, found {}", tokens.len()),
            });
        }
        let mut values = [0.0f64; 12];
        for (slot, token) in values.iter_mut().zip(&tokens) {
            *slot = token.parse().map_err(|_| Error::PoseParse {
                path: path.to_path_buf(),
                line: line_no,
                message: format!("invalid real '{token}'"),
            })?;
        }
        let rotation = Matrix3::new(
            values[0], values[1], values[2], //
            values[4], values[5], values[6], //
            values[8], values[9], values[10],
        );
        let translation = Vector3::new(values[3], values[7], values[11]);
        let pose = PoseRecord {
            rotation,
            translation,
        };
        if let Err(Error::PoseNotOrthonormal { deviation, .. }) = pose.validate() {
            return Err(Error::PoseNotOrthonormal {
                path: path.to_path_buf(),
                line: line_no,
                deviation,
            });
        }
        poses.push(pose);
    }
    Ok(poses)
}

/// Registers a raw scan into the world frame.
///
/// The scan origin is the pose translation. Points beyond `max_range` are
/// pulled back onto the max-range sphere and flagged as non-hits; everything
/// else is a hit.
pub fn to_world_scan(raw: &RawScan, pose: &PoseRecord, max_range: f64) -> Scan {
    assert!(max_range > 0.0, "max_range must be positive");
    let origin = Point3::from(pose.translation);
    let mut scan = Scan::new(origin);
    for point in &raw.points {
        let sensor = Point3::new(
            point.position.x as f64,
            point.position.y as f64,
            point.position.z as f64,
        );
        let range = sensor.coords.norm();
        let world = pose.transform_point(&sensor);
        if range > max_range {
            let truncated = origin + (world - origin) * (max_range / range);
            scan.push(truncated, false);
        } else {
            scan.push(world, true);
        }
    }
    scan
}

/// Map export format.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Ply,
    Csv,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ply" => Ok(ExportFormat::Ply),
            "csv" => Ok(ExportFormat::Csv),
            other => Err(Error::InvalidConfig(format!(
                "unknown export format '{other}' (expected ply or csv)"
            ))),
        }
    }
}

/// Formats a real with six decimals and trimmed trailing zeros, so exports
/// are byte-reproducible and human-readable.
fn format_real(value: f64) -> String {
    let mut s = format!("{value:.6}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

/// Writes all cells with occupancy above `threshold` to `path`, sorted by
/// key so identical maps produce identical bytes. Returns the cell count.
pub fn export_map(
    map: &OccupancyMap,
    threshold: f64,
    format: ExportFormat,
    path: impl AsRef<Path>,
) -> Result<usize> {
    let path = path.as_ref();
    let mut cells: Vec<(VoxelKey, f64)> = map.occupied_cells(threshold).collect();
    cells.sort_by_key(|&(key, _)| key);

    let voxel_size = map.voxel_size();
    let mut out = Vec::new();
    match format {
        ExportFormat::Csv => {
            out.extend_from_slice(b"i,j,k,x,y,z,occupancy\n");
            for &(key, occupancy) in &cells {
                let c = voxel_center(key, voxel_size);
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    key.i,
                    key.j,
                    key.k,
                    format_real(c.x),
                    format_real(c.y),
                    format_real(c.z),
                    format_real(occupancy)
                )
                .expect("writing to a Vec cannot fail");
            }
        }
        ExportFormat::Ply => {
            writeln!(out, "ply").unwrap();
            writeln!(out, "format ascii 1.0").unwrap();
            writeln!(out, "element vertex {}", cells.len()).unwrap();
            writeln!(out, "property float x").unwrap();
            writeln!(out, "property float y").unwrap();
            writeln!(out, "property float z").unwrap();
            writeln!(out, "property float occupancy").unwrap();
            writeln!(out, "end_header").unwrap();
            for &(key, occupancy) in &cells {
                let c = voxel_center(key, voxel_size);
                writeln!(
                    out,
                    "{} {} {} {}",
                    format_real(c.x),
                    format_real(c.y),
                    format_real(c.z),
                    format_real(occupancy)
                )
                .unwrap();
            }
        }
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))?;
    Ok(cells.len())
}
