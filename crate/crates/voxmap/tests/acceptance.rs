//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use std::collections::HashMap;
use std::time::Instant;

use nalgebra::{Point3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use voxmap::density::{alpha, eta, rho, weight, DensityParams, FaceCase};
use voxmap::grid::{
    key_from_point, log_odds_to_prob, prob_to_log_odds, voxel_center, OccupancyMap, VoxelKey,
};
use voxmap::integrate::{bayes_posterior, insert_scan, Scan};
use voxmap::io::{read_poses, read_velodyne_bin, export_map, ExportFormat};
use voxmap::sensor::{measurement_probability, Observation, SensorModelParams, UpdatePolicy};
use voxmap::traversal::{traverse, Ray};
use voxmap::validate::{density_validation_curve, ground_plane_experiment, GroundPlaneSpec,
    SphereScanSpec};

const SQRT3: f64 = 1.7320508075688772;

fn report(criterion: usize, ok: bool, detail: &str) {
    println!(
        "criterion {criterion:2} {}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_01_bayes_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    // "No clamping active": the running posterior must stay inside the
    // clamp interval, so draws that would leave it are rejected.
    let (lo, hi) = (prob_to_log_odds(0.12), prob_to_log_odds(0.97));
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let len = rng.random_range(1..=50);
        let mut sum = 0.0;
        let mut observations = Vec::with_capacity(len);
        for _ in 0..len {
            let p = loop {
                let p = rng.random_range(0.12..=0.97);
                let next = sum + prob_to_log_odds(p);
                if (lo..=hi).contains(&next) {
                    break p;
                }
            };
            sum += prob_to_log_odds(p);
            observations.push(p);
        }

        let summed = log_odds_to_prob(sum);
        let mut folded = 0.5;
        for &p in &observations {
            folded = bayes_posterior(folded, p).unwrap();
        }

        let rel = (summed - folded).abs() / summed.abs().max(folded.abs()).max(1e-300);
        worst = worst.max(rel);
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        1,
        worst < 1e-10 && elapsed < 5.0,
        &format!("10000 in-bounds sequences, worst relative error {worst:.2e}, {elapsed:.2} s"),
    );
}

/// Independent chord oracle: clip the ray parameter interval against the
/// cell's box with the slab method.
fn slab_interval(key: VoxelKey, origin: &Point3<f64>, dir: &Vector3<f64>, w: f64) -> (f64, f64) {
    let mut t0 = f64::NEG_INFINITY;
    let mut t1 = f64::INFINITY;
    let lo = [key.i as f64 * w, key.j as f64 * w, key.k as f64 * w];
    for a in 0..3 {
        let d = dir[a];
        if d == 0.0 {
            continue;
        }
        let ta = (lo[a] - origin[a]) / d;
        let tb = (lo[a] + w - origin[a]) / d;
        t0 = t0.max(ta.min(tb));
        t1 = t1.min(ta.max(tb));
    }
    (t0, t1)
}

/// Fine-sampling chord oracle with midpoint assignment.
fn sampling_chords(ray: &Ray, w: f64, spacing: f64) -> HashMap<VoxelKey, f64> {
    let len = ray.length();
    let dir = (ray.endpoint - ray.origin) / len;
    let n = (len / spacing).ceil().max(1.0) as usize;
    let h = len / n as f64;
    let mut chords: HashMap<VoxelKey, f64> = HashMap::new();
    let mut run: Option<(VoxelKey, f64)> = None;
    for i in 0..n {
        let a = i as f64 * h;
        let b = ((i + 1) as f64 * h).min(len);
        let mid = ray.origin + dir * (0.5 * (a + b));
        let key = key_from_point(&mid, w).unwrap();
        run = match run {
            Some((k, acc)) if k == key => Some((k, acc + (b - a))),
            Some((k, acc)) => {
                *chords.entry(k).or_insert(0.0) += acc;
                Some((key, b - a))
            }
            None => Some((key, b - a)),
        };
    }
    if let Some((k, acc)) = run {
        *chords.entry(k).or_insert(0.0) += acc;
    }
    chords
}

#[test]
fn criterion_02_chord_partition() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let sizes = [0.1, 0.2, 0.6, 0.8];

    let mut rays: Vec<(Ray, f64)> = Vec::with_capacity(10_000);
    for i in 0..10_000usize {
        let w = sizes[i % sizes.len()];
        let origin = Point3::new(
            rng.random_range(-40.0..40.0),
            rng.random_range(-40.0..40.0),
            rng.random_range(-40.0..40.0),
        );
        let dir = loop {
            let v = Vector3::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            let n = v.norm();
            if n > 1e-3 {
                break v / n;
            }
        };
        let len = rng.random_range(0.1..120.0);
        rays.push((
            Ray {
                origin,
                endpoint: origin + dir * len,
                is_hit: rng.random_bool(0.5),
            },
            w,
        ));
    }

    let mut worst_partition = 0.0f64;
    let mut worst_bound = f64::NEG_INFINITY;
    let mut worst_clip = 0.0f64;
    for (ray, w) in &rays {
        let len = ray.length();
        let dir = (ray.endpoint - ray.origin) / len;
        let segments = traverse(ray, *w).unwrap();
        let total: f64 = segments.iter().map(|s| s.lambda).sum();
        worst_partition = worst_partition.max((total - len).abs());
        for seg in &segments {
            let over = seg.lambda + seg.lambda_prime.unwrap_or(0.0) - SQRT3 * w;
            worst_bound = worst_bound.max(over);
            let (t0, t1) = slab_interval(seg.key, &ray.origin, &dir, *w);
            let expect = (t1.min(len) - t0.max(0.0)).max(0.0);
            worst_clip = worst_clip.max((seg.lambda - expect).abs());
        }
    }

    // Fine-sampling spot check on a subset; the oracle's own resolution
    // must sit well inside the 1e-4 comparison tolerance.
    let mut worst_sampled = 0.0f64;
    for (ray, w) in rays.iter().step_by(67).take(150) {
        let sampled = sampling_chords(ray, *w, 2.5e-5);
        for seg in traverse(ray, *w).unwrap() {
            let got = sampled.get(&seg.key).copied().unwrap_or(0.0);
            worst_sampled = worst_sampled.max((seg.lambda - got).abs());
        }
    }

    let elapsed = start.elapsed().as_secs_f64();
    let ok = worst_partition < 1e-9
        && worst_bound <= 1e-12
        && worst_clip < 1e-9
        && worst_sampled < 1e-4
        && elapsed < 30.0;
    report(
        2,
        ok,
        &format!(
            "10000 rays: partition {worst_partition:.2e} m, bound excess {worst_bound:.2e}, \
             slab-clip {worst_clip:.2e} m, sampled {worst_sampled:.2e} m, {elapsed:.1} s"
        ),
    );
}

#[test]
fn criterion_03_sensor_model_anchors() {
    let params = SensorModelParams::default();
    let diag = SQRT3 * params.voxel_size();
    let near = 1.0; // w(1 m) saturates at exactly 1

    let full_hit = Observation::Hit {
        lambda: 0.0,
        lambda_prime: 0.1,
    };
    let full_miss = Observation::Miss { lambda: diag };
    let neutral_hit = Observation::Hit {
        lambda: 0.1,
        lambda_prime: 0.0,
    };
    let neutral_miss = Observation::Miss { lambda: 0.0 };

    let mut ok = true;
    for policy in [UpdatePolicy::Method1, UpdatePolicy::Method2] {
        ok &= measurement_probability(policy, full_hit, near, &params).unwrap() == 0.7;
        ok &= measurement_probability(policy, full_miss, near, &params).unwrap() == 0.4;
        ok &= measurement_probability(policy, neutral_hit, near, &params).unwrap() == 0.5;
        ok &= measurement_probability(policy, neutral_miss, near, &params).unwrap() == 0.5;
    }
    report(
        3,
        ok,
        "hit(lambda=0) = 0.7, miss(lambda=diagonal) = 0.4, zero-information cases = 0.5, all exact",
    );
}

#[test]
fn criterion_04_density_bounds() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = String::new();
    for voxel_size in [0.8, 0.6] {
        let spec =
            SphereScanSpec::full_sphere(100.0, 0.4f64.to_radians(), 0.16f64.to_radians());
        let curve = density_validation_curve(&spec, voxel_size, voxel_size / 2.0).unwrap();
        let mut contained = true;
        let mut closer = true;
        for bin in curve.bins.iter().filter(|b| b.distance >= 5.0) {
            if !(bin.empirical_mean >= bin.alpha1 * 0.9
                && bin.empirical_mean <= bin.alpha3 * 1.1)
            {
                contained = false;
            }
            if bin.distance >= 20.0
                && (bin.empirical_mean - bin.alpha3).abs()
                    >= (bin.empirical_mean - bin.alpha1).abs()
            {
                closer = false;
            }
        }
        ok &= contained && closer;
        detail.push_str(&format!(
            "w={voxel_size}: contained={contained} closer-to-upper={closer}; "
        ));
    }
    let elapsed = start.elapsed().as_secs_f64();
    ok &= elapsed < 180.0;
    report(4, ok, &format!("{detail}{elapsed:.0} s"));
}

#[test]
fn criterion_05_asymptotic_simplification() {
    let params = DensityParams::default();
    let mut worst: f64 = 1.0;
    let mut d = 50.0 * params.voxel_size;
    while d <= 200.0 {
        let ratio = rho(d, &params).unwrap() / alpha(FaceCase::Three, d, &params).unwrap();
        if !(0.95..=1.0).contains(&ratio) {
            report(5, false, &format!("ratio {ratio} at d = {d}"));
        }
        worst = worst.min(ratio);
        d += 0.25;
    }
    report(
        5,
        true,
        &format!("rho/alpha3 in [0.95, 1] for d in [10, 200] m (min {worst:.4})"),
    );
}

#[test]
fn criterion_06_eta_identities() {
    let params = DensityParams::default();
    let mut ok = true;
    for d in [0.3, 1.0, 5.5, 10.0, 42.0, 100.0] {
        let weights = eta(d, &params).unwrap();
        ok &= weights.one == 6.0;
        ok &= weights.one + weights.two + weights.three == weights.total;
    }
    let eta_ten = eta(10.0, &params).unwrap();
    let eta2_err = (eta_ten.two - 930.48).abs();
    ok &= eta2_err < 0.01;
    report(
        6,
        ok,
        &format!("eta1 = 6, partition exact, eta2(10 m) = {:.5} (within 0.01 of 930.48)", eta_ten.two),
    );
}

#[test]
fn criterion_07_weight_function() {
    let params = DensityParams::default();
    let mut ok = true;

    // Saturated region.
    let mut d = 0.05;
    while d <= 5.0 {
        ok &= weight(d, &params) == 1.0;
        d += 0.05;
    }

    // Monotone non-increasing.
    let mut previous = 1.0;
    let mut d = 0.1;
    while d <= 100.0 {
        let w = weight(d, &params);
        ok &= w <= previous + 1e-15;
        previous = w;
        d += 0.1;
    }

    // Crossover of rho(d) = gamma by bisection against the direct model.
    let (mut lo, mut hi) = (5.0, 40.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if rho(mid, &params).unwrap() > params.gamma {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let crossing = 0.5 * (lo + hi);
    ok &= (crossing - 12.7).abs() <= 0.5;
    report(
        7,
        ok,
        &format!("w = 1 through 5 m, non-increasing, rho = 32 at d = {crossing:.3} m"),
    );
}

#[test]
fn criterion_08_ground_plane_comparison() {
    let start = Instant::now();
    // 15 poses along the track; five scans cannot accumulate enough hit
    // coverage on the synthetic plane for the orderings to emerge.
    let spec = GroundPlaneSpec {
        scan_count: 15,
        ..GroundPlaneSpec::default()
    };
    let outcome =
        ground_plane_experiment(&UpdatePolicy::ALL, &spec, &SensorModelParams::default())
            .unwrap();
    let holes = |name: &str| {
        outcome
            .metrics
            .iter()
            .find(|m| m.policy == name)
            .unwrap()
            .holes
    };
    let (baseline, m1, m2) = (holes("baseline"), holes("m1"), holes("m2"));
    let gap = (baseline as f64 - m1 as f64).abs() / baseline.max(m1).max(1) as f64;
    let elapsed = start.elapsed().as_secs_f64();
    let ok = m2 <= m1 && m2 <= baseline && gap <= 0.2 && elapsed < 120.0;
    report(
        8,
        ok,
        &format!(
            "holes: baseline {baseline}, m1 {m1}, m2 {m2}; baseline/m1 gap {:.1}%, {elapsed:.0} s",
            gap * 100.0
        ),
    );
}

#[test]
fn criterion_09_policy_semantics() {
    let params = SensorModelParams::default();
    let cell = VoxelKey::new(0, 0, 0);

    // One scan giving the cell [0, 0.2)^3 exactly three misses and one hit.
    // The sensor sits close enough that the weight saturates at 1.
    let mut scan = Scan::new(Point3::new(-0.3, 0.1, 0.1));
    for _ in 0..3 {
        scan.push(Point3::new(0.5, 0.1, 0.1), false); // straight through
    }
    scan.push(Point3::new(0.1, 0.1, 0.1), true); // impact at the cell center

    // Observation audit: the cell sees exactly 3 misses and 1 hit.
    let mut hits = 0;
    let mut misses = 0;
    let mut per_measurement = Vec::new();
    for ray in scan.rays() {
        for seg in traverse(&ray, 0.2).unwrap() {
            if seg.key != cell {
                continue;
            }
            let distance = (voxel_center(cell, 0.2) - scan.origin).norm();
            let observation = if seg.terminal_hit {
                hits += 1;
                Observation::Hit {
                    lambda: seg.lambda,
                    lambda_prime: seg.lambda_prime.unwrap(),
                }
            } else {
                misses += 1;
                Observation::Miss { lambda: seg.lambda }
            };
            per_measurement.push(
                measurement_probability(UpdatePolicy::Method2, observation, distance, &params)
                    .unwrap(),
            );
        }
    }
    assert_eq!((hits, misses), (1, 3), "fixture geometry drifted");

    let mut baseline_map = OccupancyMap::with_defaults();
    insert_scan(&mut baseline_map, &scan, UpdatePolicy::Baseline, &params).unwrap();
    let baseline_occupancy = baseline_map.occupancy(cell);
    let baseline_expected = bayes_posterior(0.5, 0.7).unwrap();

    let mut m2_map = OccupancyMap::with_defaults();
    insert_scan(&mut m2_map, &scan, UpdatePolicy::Method2, &params).unwrap();
    let m2_occupancy = m2_map.occupancy(cell);
    let mut m2_expected = 0.5;
    for p in &per_measurement {
        m2_expected = bayes_posterior(m2_expected, *p).unwrap();
    }

    let ok = baseline_occupancy == baseline_expected
        && baseline_expected == 0.7
        && (m2_occupancy - m2_expected).abs() < 1e-10;
    report(
        9,
        ok,
        &format!(
            "baseline 3 miss + 1 hit -> {baseline_occupancy} (exactly 0.7); \
             m2 folds all 4 observations -> {m2_occupancy:.6}"
        ),
    );
}

fn golden_map() -> OccupancyMap {
    let mut map = OccupancyMap::with_defaults();
    map.apply_log_odds(VoxelKey::new(0, 0, 0), prob_to_log_odds(0.7))
        .unwrap();
    map.apply_log_odds(VoxelKey::new(-1, 2, 0), prob_to_log_odds(0.9))
        .unwrap();
    map.apply_log_odds(VoxelKey::new(0, -1, 3), prob_to_log_odds(0.6))
        .unwrap();
    map
}

#[test]
fn criterion_10_io_round_trips() {
    let dir = tempfile::TempDir::new().unwrap();
    let mut ok = true;

    // Hand-built binary point file.
    let bin = dir.path().join("scan.bin");
    let floats: [f32; 8] = [1.0, 2.0, 3.0, 0.5, -1.0, 0.0, 0.25, 0.0];
    let bytes: Vec<u8> = floats.iter().flat_map(|f| f.to_le_bytes()).collect();
    std::fs::write(&bin, &bytes).unwrap();
    let raw = read_velodyne_bin(&bin).unwrap();
    ok &= raw.points.len() == 2
        && raw.points[0].position == Point3::new(1.0, 2.0, 3.0)
        && raw.points[1].position == Point3::new(-1.0, 0.0, 0.25);

    // Truncated file reports the offset of the broken record.
    let bad = dir.path().join("bad.bin");
    std::fs::write(&bad, vec![0u8; 17]).unwrap();
    ok &= matches!(
        read_velodyne_bin(&bad),
        Err(voxmap::Error::TruncatedPointFile { offset: 16, .. })
    );

    // Pose file round trip.
    let poses_path = dir.path().join("poses.txt");
    std::fs::write(
        &poses_path,
        "1 0 0 0 0 1 0 0 0 0 1 0\n1 0 0 2.5 0 1 0 0 0 0 1 0\n",
    )
    .unwrap();
    let poses = read_poses(&poses_path).unwrap();
    ok &= poses.len() == 2
        && poses[0].translation == Vector3::new(0.0, 0.0, 0.0)
        && poses[1].translation == Vector3::new(2.5, 0.0, 0.0);

    let short = dir.path().join("short.txt");
    std::fs::write(&short, "1 0 0 0 0 1 0 0 0 0 1\n").unwrap();
    ok &= matches!(
        read_poses(&short),
        Err(voxmap::Error::PoseParse { line: 1, .. })
    );

    // Exports must match the golden files byte for byte.
    let map = golden_map();
    let csv = dir.path().join("map3.csv");
    let ply = dir.path().join("map3.ply");
    export_map(&map, 0.5, ExportFormat::Csv, &csv).unwrap();
    export_map(&map, 0.5, ExportFormat::Ply, &ply).unwrap();
    let csv_ok = std::fs::read(&csv).unwrap()
        == include_bytes!("golden/map3.csv").to_vec();
    let ply_ok = std::fs::read(&ply).unwrap()
        == include_bytes!("golden/map3.ply").to_vec();
    ok &= csv_ok && ply_ok;

    report(
        10,
        ok,
        &format!("readers round-trip; golden exports: csv {csv_ok}, ply {ply_ok}"),
    );
}
