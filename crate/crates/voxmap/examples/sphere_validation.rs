//! Brute-force validation of the ray-count model: insert a synthetic
//! spherical pointcloud, count rays per voxel, compare the binned means
//! with the analytic curves.
//!
//! ```bash
//! cargo run -p voxmap --example sphere_validation            # desk size
//! cargo run -p voxmap --example sphere_validation -- --full  # 100 m sphere
//! ```

use voxmap::validate::{density_validation_curve, SphereScanSpec};

fn main() {
    let full = std::env::args().any(|a| a == "--full");
    let (radius, vres, hres, voxel_sizes): (f64, f64, f64, &[f64]) = if full {
        (100.0, 0.4, 0.16, &[0.8, 0.6])
    } else {
        (25.0, 1.0, 0.4, &[0.8])
    };

    for &voxel_size in voxel_sizes {
        let spec = SphereScanSpec::full_sphere(radius, vres.to_radians(), hres.to_radians());
        eprintln!("tracing sphere scan: r = {radius} m, voxel = {voxel_size} m ...");
        let curve = density_validation_curve(&spec, voxel_size, voxel_size / 2.0).unwrap();

        let path = format!("sphere_validation_w{voxel_size}.csv");
        curve.write_csv(&path).unwrap();
        println!("wrote {} bins to {path}", curve.bins.len());

        println!(
            "{:>7} {:>11} {:>10} {:>10} {:>10}",
            "d [m]", "empirical", "alpha1", "alpha3", "rho"
        );
        for bin in curve
            .bins
            .iter()
            .filter(|b| b.distance >= 2.0 * voxel_size)
            .step_by(10)
        {
            println!(
                "{:>7.2} {:>11.2} {:>10.2} {:>10.2} {:>10.2}",
                bin.distance, bin.empirical_mean, bin.alpha1, bin.alpha3, bin.rho
            );
        }

        // The measured means must sit inside the bounding cases and hug the
        // three-face upper bound far from the sensor.
        let mut contained = 0usize;
        let mut total = 0usize;
        for bin in curve.bins.iter().filter(|b| b.distance >= 5.0) {
            total += 1;
            if bin.empirical_mean >= bin.alpha1 * 0.9 && bin.empirical_mean <= bin.alpha3 * 1.1 {
                contained += 1;
            }
        }
        println!("bins within [0.9 a1, 1.1 a3] past 5 m: {contained}/{total}\n");
    }
}
