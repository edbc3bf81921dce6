//! File formats end to end: write a binary point file and a pose file,
//! read them back, register the scan to the world frame and build a map.
//!
//! ```bash
//! cargo run -p voxmap --example scan_files
//! ```

use std::fs;

use voxmap::io::{read_poses, read_velodyne_bin, to_world_scan, export_map, ExportFormat};
use voxmap::sensor::{SensorModelParams, UpdatePolicy};
use voxmap::{insert_scan, OccupancyMap};

fn main() {
    let dir = std::env::temp_dir().join("voxmap_scan_files");
    fs::create_dir_all(&dir).unwrap();

    // A ring of points 2 m out, sensor frame, float32 (x, y, z, reflectance).
    let bin_path = dir.join("0000000000.bin");
    let mut bytes = Vec::new();
    for step in 0..360 {
        let angle = (step as f32).to_radians();
        for value in [2.0 * angle.cos(), 2.0 * angle.sin(), 0.1f32, 0.5f32] {
            bytes.extend_from_slice(&value.to_le_bytes());
        }
    }
    fs::write(&bin_path, &bytes).unwrap();

    // Two poses: identity, then 1.5 m forward with a 30 degree yaw.
    let pose_path = dir.join("poses.txt");
    let yaw = 30f64.to_radians();
    let (s, c) = yaw.sin_cos();
    fs::write(
        &pose_path,
        format!("1 0 0 0 0 1 0 0 0 0 1 0\n{c} {} 0 1.5 {s} {c} 0 0 0 0 1 0\n", -s),
    )
    .unwrap();

    let raw = read_velodyne_bin(&bin_path).unwrap();
    println!(
        "read {} points ({} skipped as non-finite)",
        raw.points.len(),
        raw.skipped_non_finite
    );

    let poses = read_poses(&pose_path).unwrap();
    println!("read {} poses", poses.len());

    let params = SensorModelParams::default();
    let mut map = OccupancyMap::with_defaults();
    for (index, pose) in poses.iter().enumerate() {
        let scan = to_world_scan(&raw, pose, 80.0);
        let report = insert_scan(&mut map, &scan, UpdatePolicy::Method2, &params).unwrap();
        println!(
            "scan {index}: origin ({:.2}, {:.2}, {:.2}), {} cells touched",
            scan.origin.x, scan.origin.y, scan.origin.z, report.cells_touched
        );
    }

    let out = dir.join("ring.csv");
    let cells = export_map(&map, 0.5, ExportFormat::Csv, &out).unwrap();
    println!("exported {cells} occupied cells to {}", out.display());
}
