//! Policy comparison over a simulated ground plane: how many surface cells
//! does each update rule wrongly classify as free?
//!
//! ```bash
//! cargo run -p voxmap --example ground_plane             # desk size
//! cargo run -p voxmap --example ground_plane -- --full   # 15 scans, 30 m
//! ```

use voxmap::cli::cmd_ground_plane;
use voxmap::density::SensorAngularSpec;
use voxmap::sensor::SensorModelParams;
use voxmap::validate::GroundPlaneSpec;

fn main() {
    let full = std::env::args().any(|a| a == "--full");

    let mut params = SensorModelParams::default();
    let spec = if full {
        GroundPlaneSpec {
            scan_count: 15,
            ..GroundPlaneSpec::default()
        }
    } else {
        // Coarser scanner over a smaller disk; the weight crossover moves
        // close to the sensor, so the region is dominated by attenuated
        // updates just like the far field of the real configuration.
        params.density.spec = SensorAngularSpec::from_degrees(1.2, 0.8).unwrap();
        GroundPlaneSpec {
            eval_radius: 12.0,
            ..GroundPlaneSpec::default()
        }
    };

    eprintln!(
        "simulating {} scans over a plane, evaluating {} m around the track ...",
        spec.scan_count, spec.eval_radius
    );
    let outcome = cmd_ground_plane(&spec, &params, &mut std::io::stdout()).unwrap();
    println!(
        "\nplane cells containing at least one impact: {}",
        outcome.hit_plane_cells
    );
}
