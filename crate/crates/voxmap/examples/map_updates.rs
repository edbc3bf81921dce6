//! Basic map usage: log-odds updates, occupancy queries and clamping.
//!
//! ```bash
//! cargo run -p voxmap --example map_updates
//! ```

use voxmap::{bayes_posterior, prob_to_log_odds, OccupancyMap, VoxelKey};

fn main() {
    // 0.2 m voxels, uniform prior, occupancy clamped to [0.12, 0.97].
    let mut map = OccupancyMap::with_defaults();
    let cell = VoxelKey::new(3, -1, 0);

    println!("fresh cell reports the prior: {}", map.occupancy(cell));

    map.apply_log_odds(cell, prob_to_log_odds(0.7)).unwrap();
    println!("after one hit observation:   {}", map.occupancy(cell));

    map.apply_log_odds(cell, prob_to_log_odds(0.4)).unwrap();
    println!("after one miss observation:  {}", map.occupancy(cell));

    // The additive log-odds path is the same recursion as the posterior
    // update, just cheaper to iterate.
    let folded = bayes_posterior(bayes_posterior(0.5, 0.7).unwrap(), 0.4).unwrap();
    println!("posterior folded directly:   {folded}");

    // Repeated hits saturate at the upper clamp instead of running away.
    for _ in 0..20 {
        map.apply_log_odds(cell, prob_to_log_odds(0.7)).unwrap();
    }
    println!("after 20 more hits (clamped): {:.6}", map.occupancy(cell));

    // A couple of free cells for the listing below.
    map.apply_log_odds(VoxelKey::new(0, 0, 0), prob_to_log_odds(0.3))
        .unwrap();
    map.apply_log_odds(VoxelKey::new(1, 0, 0), prob_to_log_odds(0.8))
        .unwrap();

    println!("\ncells above 0.5:");
    let mut cells: Vec<_> = map.occupied_cells(0.5).collect();
    cells.sort_by_key(|&(key, _)| key);
    for (key, occupancy) in cells {
        println!("  ({}, {}, {}) -> {occupancy:.4}", key.i, key.j, key.k);
    }
}
