//! End-to-end map building on synthetic scans: a sensor orbiting a box,
//! one map per update policy, exported occupied cells.
//!
//! ```bash
//! cargo run -p voxmap --example build_map
//! ```

use nalgebra::Point3;
use voxmap::io::{export_map, ExportFormat};
use voxmap::sensor::{SensorModelParams, UpdatePolicy};
use voxmap::{insert_scan, OccupancyMap, Scan};

/// A sensor at `origin` sweeping horizontal rays against an axis-aligned
/// box; rays that miss the box terminate at max range as non-hits.
fn scan_box(origin: Point3<f64>, half_extent: f64, max_range: f64) -> Scan {
    let mut scan = Scan::new(origin);
    for step in 0..720 {
        let azimuth = step as f64 * std::f64::consts::TAU / 720.0;
        let (sin_a, cos_a) = azimuth.sin_cos();
        // Clip the ray against the box walls (slab test in 2D; the box
        // spans all z the rays can reach).
        let mut t_enter = f64::NEG_INFINITY;
        let mut t_exit = f64::INFINITY;
        for (o, d) in [(origin.x, cos_a), (origin.y, sin_a)] {
            if d == 0.0 {
                if o.abs() > half_extent {
                    t_enter = f64::INFINITY;
                }
                continue;
            }
            let a = (-half_extent - o) / d;
            let b = (half_extent - o) / d;
            t_enter = t_enter.max(a.min(b));
            t_exit = t_exit.min(a.max(b));
        }
        let hit = t_enter.is_finite() && t_enter > 0.0 && t_enter <= t_exit;
        let range = if hit && t_enter <= max_range {
            t_enter
        } else {
            max_range
        };
        let endpoint = origin + nalgebra::Vector3::new(cos_a, sin_a, 0.0) * range;
        scan.push(endpoint, hit && t_enter <= max_range);
    }
    scan
}

fn main() {
    let params = SensorModelParams::default();
    let tmp = std::env::temp_dir();

    for policy in UpdatePolicy::ALL {
        let mut map = OccupancyMap::with_defaults();
        // Four sensor positions around a 2 m box centered at the origin.
        for origin in [
            Point3::new(6.0, 0.1, 0.1),
            Point3::new(-6.0, 0.3, 0.1),
            Point3::new(0.1, 6.0, 0.1),
            Point3::new(0.3, -6.0, 0.1),
        ] {
            let scan = scan_box(origin, 1.0, 12.0);
            let report = insert_scan(&mut map, &scan, policy, &params).unwrap();
            println!(
                "{policy:9} inserted {} rays: {} hits, {} misses, {} cells",
                report.rays_processed, report.hits, report.misses, report.cells_touched
            );
        }

        let csv = tmp.join(format!("box_map_{policy}.csv"));
        let ply = tmp.join(format!("box_map_{policy}.ply"));
        let cells = export_map(&map, 0.5, ExportFormat::Csv, &csv).unwrap();
        export_map(&map, 0.5, ExportFormat::Ply, &ply).unwrap();
        println!(
            "{policy:9} map: {} stored cells, {cells} occupied -> {}\n",
            map.len(),
            csv.display()
        );
    }
}
