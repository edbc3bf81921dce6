//! The analytic ray-count model and the distance weight derived from it.
//!
//! ```bash
//! cargo run -p voxmap --example density_model
//! ```

use voxmap::density::{alpha, rho, weight, DensityParams, FaceCase};

fn main() {
    // HDL-64E-like scanner on a 0.2 m grid, gamma = 32.
    let params = DensityParams::default();

    println!("expected rays through a voxel at distance d:");
    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>10} {:>8}",
        "d [m]", "alpha1", "alpha2", "alpha3", "rho", "w(d)"
    );
    for d in [1.0, 2.0, 5.0, 10.0, 15.0, 20.0, 30.0, 50.0, 100.0] {
        println!(
            "{d:>6} {:>10.2} {:>10.2} {:>10.2} {:>10.2} {:>8.4}",
            alpha(FaceCase::One, d, &params).unwrap(),
            alpha(FaceCase::Two, d, &params).unwrap(),
            alpha(FaceCase::Three, d, &params).unwrap(),
            rho(d, &params).unwrap(),
            weight(d, &params),
        );
    }

    // Bisect the distance where rho(d) falls to gamma: beyond it,
    // observations start being attenuated.
    let (mut lo, mut hi) = (1.0, 100.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if rho(mid, &params).unwrap() > params.gamma {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    println!(
        "\nwith gamma = {}, the weight drops below 1 at d = {:.3} m",
        params.gamma,
        0.5 * (lo + hi)
    );

    // Far from the sensor nearly all voxels show three faces, so the blend
    // collapses onto the three-face case.
    for d in [10.0, 50.0, 200.0] {
        let ratio = rho(d, &params).unwrap() / alpha(FaceCase::Three, d, &params).unwrap();
        println!("rho/alpha3 at {d:>5} m: {ratio:.4}");
    }
}
