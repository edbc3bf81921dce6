//! Synthetic data generators and brute-force oracles.
//!
//! Two experiments live here. The sphere scan sweeps a full angular lattice
//! of rays out to a fixed radius and counts, per voxel, how many rays pass
//! through it; binned by distance this is the empirical check of the
//! analytic ray-count model. The ground-plane experiment simulates a scanner
//! moving over a flat surface and compares how many surface cells each
//! update policy wrongly frees.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use nalgebra::{Point3, Vector3};
use serde::Serialize;

use crate::density::{alpha, rho, DensityParams, FaceCase, SensorAngularSpec};
use crate::error::{Error, Result};
use crate::grid::{
    key_from_point, prob_to_log_odds, voxel_center, GridConfig, OccupancyMap, VoxelKey,
};
use crate::integrate::{insert_scan, Scan};
use crate::sensor::{measurement_probability, Observation, SensorModelParams, UpdatePolicy};
use crate::traversal::traverse;

/// Angular lattice of hit rays from a center point to a sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereScanSpec {
    pub radius: f64,
    /// Elevation step, radians.
    pub vertical_res: f64,
    /// Azimuth step, radians; the azimuth always sweeps the full circle.
    pub horizontal_res: f64,
    /// Inclusive elevation interval (min, max), radians.
    pub vertical_fov: (f64, f64),
    pub center: Point3<f64>,
}

impl SphereScanSpec {
    /// Full-sphere lattice, the configuration used to validate the model.
    pub fn full_sphere(radius: f64, vertical_res: f64, horizontal_res: f64) -> Self {
        use std::f64::consts::FRAC_PI_2;
        Self {
            radius,
            vertical_res,
            horizontal_res,
            vertical_fov: (-FRAC_PI_2, FRAC_PI_2),
            center: Point3::origin(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "sphere radius must be positive, got {}",
                self.radius
            )));
        }
        if !(self.vertical_res > 0.0 && self.horizontal_res > 0.0) {
            return Err(Error::InvalidConfig(
                "angular resolutions must be positive".into(),
            ));
        }
        if self.vertical_fov.0 > self.vertical_fov.1 {
            return Err(Error::InvalidConfig(
                "vertical fov must be ordered (min, max)".into(),
            ));
        }
        Ok(())
    }

    pub fn elevations(&self) -> impl Iterator<Item = f64> + '_ {
        let (lo, hi) = self.vertical_fov;
        let steps = ((hi - lo) / self.vertical_res + 1e-9).floor() as usize;
        (0..=steps).map(move |i| lo + i as f64 * self.vertical_res)
    }

    pub fn azimuths(&self) -> impl Iterator<Item = f64> + '_ {
        let steps = (std::f64::consts::TAU / self.horizontal_res + 1e-9).floor() as usize;
        (0..steps.max(1)).map(move |i| i as f64 * self.horizontal_res)
    }
}

/// Rays from the center to every lattice point on the sphere, all hits.
pub fn generate_sphere_scan(spec: &SphereScanSpec) -> Scan {
    let mut scan = Scan::new(spec.center);
    for elevation in spec.elevations() {
        let (sin_e, cos_e) = elevation.sin_cos();
        for azimuth in spec.azimuths() {
            let (sin_a, cos_a) = azimuth.sin_cos();
            let dir = Vector3::new(cos_e * cos_a, cos_e * sin_a, sin_e);
            scan.push(spec.center + dir * spec.radius, true);
        }
    }
    scan
}

/// Presence-counting oracle: every voxel a ray traverses increments its
/// counter once, regardless of chord length.
pub fn count_rays_per_voxel(scan: &Scan, voxel_size: f64) -> Result<HashMap<VoxelKey, u64>> {
    scan.validate()?;
    let mut counts: HashMap<VoxelKey, u64> = HashMap::new();
    for ray in scan.rays() {
        for segment in traverse(&ray, voxel_size)? {
            *counts.entry(segment.key).or_insert(0) += 1;
        }
    }
    Ok(counts)
}

/// One distance bin of the model-versus-measurement comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityBin {
    /// Bin-center distance from the sphere center, meters.
    pub distance: f64,
    /// Mean ray count over the traversed voxels in this bin.
    pub empirical_mean: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub rho: f64,
}

/// Binned empirical counts next to the model curves.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DensityCurve {
    pub bins: Vec<DensityBin>,
}

impl DensityCurve {
    pub const CSV_HEADER: &'static str = "d,empirical,alpha1,alpha2,alpha3,rho";

    pub fn to_csv_string(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for bin in &self.bins {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                bin.distance, bin.empirical_mean, bin.alpha1, bin.alpha2, bin.alpha3, bin.rho
            ));
        }
        out
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_csv_string()).map_err(|e| Error::io(path, e))
    }

    /// Parses the CSV produced by [`to_csv_string`] and checks that the
    /// distances are strictly increasing.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some(header) if header == Self::CSV_HEADER => {}
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unexpected density curve header: {other:?}"
                )))
            }
        }
        let mut bins = Vec::new();
        for (index, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 6 {
                return Err(Error::InvalidConfig(format!(
                    "density curve line {}: expected 6 fields, found {}",
                    index + 2,
                    fields.len()
                )));
            }
            let parse = |s: &str| -> Result<f64> {
                s.parse().map_err(|_| {
                    Error::InvalidConfig(format!(
                        "density curve line {}: invalid real '{s}'",
                        index + 2
                    ))
                })
            };
            bins.push(DensityBin {
                distance: parse(fields[0])?,
                empirical_mean: parse(fields[1])?,
                alpha1: parse(fields[2])?,
                alpha2: parse(fields[3])?,
                alpha3: parse(fields[4])?,
                rho: parse(fields[5])?,
            });
        }
        for pair in bins.windows(2) {
            let increasing = pair[1].distance > pair[0].distance;
            if !increasing {
                return Err(Error::InvalidConfig(
                    "density curve distances must be strictly increasing".into(),
                ));
            }
        }
        Ok(DensityCurve { bins })
    }
}

/// Runs the sphere scan, counts rays per voxel, bins voxels by distance from
/// the center and lays the model curves alongside. Bins past the sphere
/// radius are dropped; model columns inside the validity threshold are NaN.
pub fn density_validation_curve(
    spec: &SphereScanSpec,
    voxel_size: f64,
    bin_width: f64,
) -> Result<DensityCurve> {
    spec.validate()?;
    if bin_width <= 0.0 || bin_width.is_nan() {
        return Err(Error::InvalidConfig(format!(
            "bin width must be positive, got {bin_width}"
        )));
    }

    let scan = generate_sphere_scan(spec);
    let mut counts: HashMap<VoxelKey, u64> = HashMap::new();
    // Every cell within the sphere is visited at these densities.
    let expected = (4.0 / 3.0) * std::f64::consts::PI * (spec.radius / voxel_size).powi(3);
    counts.reserve(expected as usize);
    for ray in scan.rays() {
        for segment in traverse(&ray, voxel_size)? {
            *counts.entry(segment.key).or_insert(0) += 1;
        }
    }

    // (ray-count sum, voxel count) per distance bin.
    let bin_count = (spec.radius / bin_width).ceil() as usize;
    let mut sums = vec![(0u64, 0u64); bin_count];
    for (&key, &count) in &counts {
        let distance = (voxel_center(key, voxel_size) - spec.center).norm();
        if distance > spec.radius {
            continue;
        }
        let index = ((distance / bin_width) as usize).min(bin_count - 1);
        sums[index].0 += count;
        sums[index].1 += 1;
    }

    let params = DensityParams {
        spec: SensorAngularSpec::from_radians(spec.vertical_res, spec.horizontal_res)?,
        voxel_size,
        gamma: 1.0, // unused by the model columns
    };
    let model = |f: Result<f64>| f.unwrap_or(f64::NAN);

    let mut curve = DensityCurve::default();
    for (index, &(sum, voxels)) in sums.iter().enumerate() {
        if voxels == 0 {
            continue;
        }
        let distance = (index as f64 + 0.5) * bin_width;
        curve.bins.push(DensityBin {
            distance,
            empirical_mean: sum as f64 / voxels as f64,
            alpha1: model(alpha(FaceCase::One, distance, &params)),
            alpha2: model(alpha(FaceCase::Two, distance, &params)),
            alpha3: model(alpha(FaceCase::Three, distance, &params)),
            rho: model(rho(distance, &params)),
        });
    }
    Ok(curve)
}

/// Scanner-over-a-plane simulation used to compare the update policies.
///
/// The ray lattice uses the angular resolutions of the sensor model it is
/// run with, so the generated beams and the density weight describe the same
/// scanner.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroundPlaneSpec {
    /// Sensor height above the plane, meters.
    pub sensor_height: f64,
    /// Plane height in the world frame; offset from the grid so impacts land
    /// strictly inside cells.
    pub plane_height: f64,
    /// Downward-looking inclusive elevation interval (min, max), radians.
    pub vertical_fov: (f64, f64),
    /// Number of poses, spaced along +x.
    pub scan_count: usize,
    pub pose_spacing: f64,
    /// Plane cells within this radius of the pose centroid are evaluated.
    pub eval_radius: f64,
    /// With misses disabled only terminal hit observations are applied.
    pub misses_enabled: bool,
}

impl Default for GroundPlaneSpec {
    fn default() -> Self {
        Self {
            sensor_height: 1.7,
            plane_height: 0.15,
            vertical_fov: (-24.8f64.to_radians(), -2.0f64.to_radians()),
            scan_count: 5,
            pose_spacing: 2.0,
            eval_radius: 30.0,
            misses_enabled: true,
        }
    }
}

impl GroundPlaneSpec {
    fn sensor_origin(&self, scan_index: usize) -> Point3<f64> {
        Point3::new(
            scan_index as f64 * self.pose_spacing,
            0.0,
            self.plane_height + self.sensor_height,
        )
    }

    fn eval_center(&self) -> (f64, f64) {
        (
            self.pose_spacing * self.scan_count.saturating_sub(1) as f64 / 2.0,
            0.0,
        )
    }

    /// One scan of plane hits from the pose at `scan_index`, on the angular
    /// lattice of `sensor`.
    pub fn scan(&self, scan_index: usize, sensor: &SensorAngularSpec) -> Scan {
        let origin = self.sensor_origin(scan_index);
        let lattice = SphereScanSpec {
            radius: 1.0, // unused, elevations/azimuths only
            vertical_res: sensor.vertical_res(),
            horizontal_res: sensor.horizontal_res(),
            vertical_fov: self.vertical_fov,
            center: origin,
        };
        let mut scan = Scan::new(origin);
        for elevation in lattice.elevations() {
            let (sin_e, cos_e) = elevation.sin_cos();
            if sin_e >= 0.0 {
                continue; // never meets the plane
            }
            let range = -self.sensor_height / sin_e;
            for azimuth in lattice.azimuths() {
                let (sin_a, cos_a) = azimuth.sin_cos();
                let dir = Vector3::new(cos_e * cos_a, cos_e * sin_a, sin_e);
                scan.push(origin + dir * range, true);
            }
        }
        scan
    }
}

/// Per-policy classification of the evaluated plane cells.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PolicyGroundMetrics {
    pub policy: &'static str,
    /// Plane-layer cells inside the evaluation radius.
    pub plane_cells: usize,
    /// Cells classified occupied (occupancy > 0.5).
    pub occupied: usize,
    /// Cells classified free (occupancy < 0.5): holes in the ground.
    pub holes: usize,
    /// Cells still at the prior.
    pub unknown: usize,
    pub occupied_fraction: f64,
}

/// Experiment result: hit coverage plus one metrics row per policy.
#[derive(Clone, Debug)]
pub struct GroundPlaneOutcome {
    /// Evaluated plane cells that contain at least one impact.
    pub hit_plane_cells: usize,
    pub metrics: Vec<PolicyGroundMetrics>,
}

/// Builds one map per policy from the simulated scans and classifies the
/// plane cells. Deterministic: same spec and params, same table.
pub fn ground_plane_experiment(
    policies: &[UpdatePolicy],
    spec: &GroundPlaneSpec,
    params: &SensorModelParams,
) -> Result<GroundPlaneOutcome> {
    params.validate()?;
    if spec.scan_count == 0 {
        return Err(Error::InvalidConfig("scan_count must be positive".into()));
    }
    let voxel_size = params.voxel_size();
    let scans: Vec<Scan> = (0..spec.scan_count)
        .map(|i| spec.scan(i, &params.density.spec))
        .collect();

    // Plane cells containing at least one impact, policy-independent.
    let layer = (spec.plane_height / voxel_size).floor() as i32;
    let (cx, cy) = spec.eval_center();
    let in_region = |key: VoxelKey| -> bool {
        let center = voxel_center(key, voxel_size);
        key.k == layer
            && (center.x - cx).powi(2) + (center.y - cy).powi(2) <= spec.eval_radius.powi(2)
    };
    let mut hit_cells: HashSet<VoxelKey> = HashSet::new();
    for scan in &scans {
        for point in &scan.points {
            let key = key_from_point(point, voxel_size)?;
            if in_region(key) {
                hit_cells.insert(key);
            }
        }
    }

    let mut metrics = Vec::with_capacity(policies.len());
    for &policy in policies {
        let grid = GridConfig {
            voxel_size,
            prior: 0.5,
        };
        let mut map = OccupancyMap::new(grid, params.p_min, params.p_max)?;
        for scan in &scans {
            if spec.misses_enabled {
                insert_scan(&mut map, scan, policy, params)?;
            } else {
                insert_hits_only(&mut map, scan, policy, params)?;
            }
        }
        metrics.push(classify_plane(&map, spec, policy));
    }

    Ok(GroundPlaneOutcome {
        hit_plane_cells: hit_cells.len(),
        metrics,
    })
}

/// Applies only the terminal hit observation of every ray.
fn insert_hits_only(
    map: &mut OccupancyMap,
    scan: &Scan,
    policy: UpdatePolicy,
    params: &SensorModelParams,
) -> Result<()> {
    let voxel_size = map.voxel_size();
    let mut accumulated: HashMap<VoxelKey, f64> = HashMap::new();
    for ray in scan.rays() {
        for segment in traverse(&ray, voxel_size)? {
            if !segment.terminal_hit {
                continue;
            }
            let lambda_prime = segment.lambda_prime.unwrap_or(0.0);
            if segment.lambda + lambda_prime <= 0.0 {
                continue;
            }
            let observation = Observation::Hit {
                lambda: segment.lambda,
                lambda_prime,
            };
            let distance = (voxel_center(segment.key, voxel_size) - scan.origin).norm();
            let probability = measurement_probability(policy, observation, distance, params)?;
            if probability != 0.5 {
                *accumulated.entry(segment.key).or_insert(0.0) +=
                    prob_to_log_odds(probability);
            }
        }
    }
    for (key, delta) in accumulated {
        map.apply_log_odds(key, delta)?;
    }
    Ok(())
}

fn classify_plane(
    map: &OccupancyMap,
    spec: &GroundPlaneSpec,
    policy: UpdatePolicy,
) -> PolicyGroundMetrics {
    let voxel_size = map.voxel_size();
    let layer = (spec.plane_height / voxel_size).floor() as i32;
    let (cx, cy) = spec.eval_center();
    let radius = spec.eval_radius;

    let i_min = ((cx - radius) / voxel_size).floor() as i32 - 1;
    let i_max = ((cx + radius) / voxel_size).ceil() as i32 + 1;
    let j_min = ((cy - radius) / voxel_size).floor() as i32 - 1;
    let j_max = ((cy + radius) / voxel_size).ceil() as i32 + 1;

    let mut m = PolicyGroundMetrics {
        policy: policy.name(),
        plane_cells: 0,
        occupied: 0,
        holes: 0,
        unknown: 0,
        occupied_fraction: 0.0,
    };
    for i in i_min..=i_max {
        for j in j_min..=j_max {
            let key = VoxelKey::new(i, j, layer);
            let center = voxel_center(key, voxel_size);
            if (center.x - cx).powi(2) + (center.y - cy).powi(2) > radius * radius {
                continue;
            }
            m.plane_cells += 1;
            let occupancy = map.occupancy(key);
            if occupancy > 0.5 {
                m.occupied += 1;
            } else if occupancy < 0.5 {
                m.holes += 1;
            } else {
                m.unknown += 1;
            }
        }
    }
    if m.plane_cells > 0 {
        m.occupied_fraction = m.occupied as f64 / m.plane_cells as f64;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_counting_small_case() {
        // 45 degree elevation step over [-45, +45] gives three rings; a
        // 90 degree azimuth step gives four columns.
        let spec = SphereScanSpec {
            radius: 2.0,
            vertical_res: 45f64.to_radians(),
            horizontal_res: 90f64.to_radians(),
            vertical_fov: (-45f64.to_radians(), 45f64.to_radians()),
            center: Point3::origin(),
        };
        assert_eq!(spec.elevations().count(), 3);
        assert_eq!(spec.azimuths().count(), 4);
        let scan = generate_sphere_scan(&spec);
        assert_eq!(scan.len(), 12);
    }

    #[test]
    fn endpoints_sit_on_the_sphere() {
        let spec = SphereScanSpec {
            radius: 3.5,
            vertical_res: 10f64.to_radians(),
            horizontal_res: 15f64.to_radians(),
            vertical_fov: (-30f64.to_radians(), 30f64.to_radians()),
            center: Point3::new(1.0, -2.0, 0.5),
        };
        let scan = generate_sphere_scan(&spec);
        for point in &scan.points {
            assert!(((point - spec.center).norm() - 3.5).abs() < 1e-9);
        }
        assert!(scan.hit_flags.iter().all(|&h| h));
    }

    #[test]
    fn hdl64_azimuth_step_count() {
        let spec = SphereScanSpec::full_sphere(
            100.0,
            0.4f64.to_radians(),
            0.16f64.to_radians(),
        );
        assert_eq!(spec.azimuths().count(), 2250);
    }

    #[test]
    fn counts_along_a_single_ray() {
        let mut scan = Scan::new(Point3::new(0.0, 0.1, 0.1));
        scan.push(Point3::new(1.0, 0.1, 0.1), false);
        let counts = count_rays_per_voxel(&scan, 0.2).unwrap();
        assert_eq!(counts.len(), 5);
        for i in 0..5 {
            assert_eq!(counts[&VoxelKey::new(i, 0, 0)], 1);
        }
    }

    #[test]
    fn duplicate_rays_double_the_counts() {
        let mut scan = Scan::new(Point3::new(0.0, 0.1, 0.1));
        scan.push(Point3::new(1.0, 0.1, 0.1), false);
        scan.push(Point3::new(1.0, 0.1, 0.1), false);
        let counts = count_rays_per_voxel(&scan, 0.2).unwrap();
        for i in 0..5 {
            assert_eq!(counts[&VoxelKey::new(i, 0, 0)], 2);
        }
    }

    #[test]
    fn counting_conserves_total_visits() {
        let spec = SphereScanSpec {
            radius: 4.0,
            vertical_res: 5f64.to_radians(),
            horizontal_res: 5f64.to_radians(),
            vertical_fov: (-40f64.to_radians(), 40f64.to_radians()),
            center: Point3::origin(),
        };
        let scan = generate_sphere_scan(&spec);
        let counts = count_rays_per_voxel(&scan, 0.4).unwrap();
        let total: u64 = counts.values().sum();
        let mut visits = 0u64;
        for ray in scan.rays() {
            visits += traverse(&ray, 0.4).unwrap().len() as u64;
        }
        assert_eq!(total, visits);
    }

    #[test]
    fn small_sphere_curve_shape() {
        // Desk-size version of the validation run: counts fall with distance
        // and stay inside the model's bounding cases.
        let spec = SphereScanSpec::full_sphere(
            20.0,
            1.2f64.to_radians(),
            0.5f64.to_radians(),
        );
        let curve = density_validation_curve(&spec, 0.8, 0.4).unwrap();
        assert!(!curve.bins.is_empty());
        for pair in curve.bins.windows(2) {
            assert!(pair[1].distance > pair[0].distance);
        }
        for bin in curve.bins.iter().filter(|b| b.distance >= 5.0) {
            assert!(
                bin.empirical_mean >= bin.alpha1 * 0.9 && bin.empirical_mean <= bin.alpha3 * 1.1,
                "bin at {} out of bounds: {} not in [{}, {}]",
                bin.distance,
                bin.empirical_mean,
                bin.alpha1 * 0.9,
                bin.alpha3 * 1.1
            );
        }
    }

    #[test]
    fn curve_csv_round_trip() {
        let spec = SphereScanSpec::full_sphere(
            10.0,
            3f64.to_radians(),
            1.5f64.to_radians(),
        );
        let curve = density_validation_curve(&spec, 0.6, 0.3).unwrap();
        let text = curve.to_csv_string();
        assert!(text.starts_with(DensityCurve::CSV_HEADER));
        let parsed = DensityCurve::from_csv_str(&text).unwrap();
        assert_eq!(parsed.bins.len(), curve.bins.len());
        for (a, b) in parsed.bins.iter().zip(&curve.bins) {
            assert_eq!(a.distance, b.distance);
            assert_eq!(a.empirical_mean, b.empirical_mean);
        }
    }

    #[test]
    fn curve_rejects_bad_csv() {
        assert!(DensityCurve::from_csv_str("nope\n1,2,3,4,5,6\n").is_err());
        let unsorted = format!("{}\n2,1,1,1,1,1\n1,1,1,1,1,1\n", DensityCurve::CSV_HEADER);
        assert!(DensityCurve::from_csv_str(&unsorted).is_err());
    }

    /// Desk-size configuration: a coarser scanner over a smaller region.
    /// The coarser lattice also moves the weight crossover close to the
    /// sensor, so most of the region is in the attenuated regime.
    fn desk_setup() -> (GroundPlaneSpec, SensorModelParams) {
        let spec = GroundPlaneSpec {
            eval_radius: 12.0,
            ..GroundPlaneSpec::default()
        };
        let mut params = SensorModelParams::default();
        params.density.spec = SensorAngularSpec::from_degrees(1.2, 0.8).unwrap();
        (spec, params)
    }

    #[test]
    fn ground_plane_policies_rank_as_expected() {
        let (spec, params) = desk_setup();
        let outcome = ground_plane_experiment(&UpdatePolicy::ALL, &spec, &params).unwrap();
        assert_eq!(outcome.metrics.len(), 3);
        let by_name = |name: &str| {
            outcome
                .metrics
                .iter()
                .find(|m| m.policy == name)
                .unwrap()
        };
        let baseline = by_name("baseline");
        let m1 = by_name("m1");
        let m2 = by_name("m2");
        assert!(m2.holes <= m1.holes);
        assert!(m2.holes <= baseline.holes);
        assert_eq!(baseline.plane_cells, m2.plane_cells);
    }

    #[test]
    fn hits_alone_never_free_a_cell() {
        let (mut spec, params) = desk_setup();
        spec.misses_enabled = false;
        let outcome =
            ground_plane_experiment(&[UpdatePolicy::Method2], &spec, &params).unwrap();
        let m = &outcome.metrics[0];
        assert_eq!(m.holes, 0);
        // Every plane cell containing an impact is classified occupied.
        assert_eq!(m.occupied, outcome.hit_plane_cells);
    }

    #[test]
    fn experiment_is_deterministic() {
        let (spec, params) = desk_setup();
        let a = ground_plane_experiment(&UpdatePolicy::ALL, &spec, &params).unwrap();
        let b = ground_plane_experiment(&UpdatePolicy::ALL, &spec, &params).unwrap();
        for (x, y) in a.metrics.iter().zip(&b.metrics) {
            assert_eq!(x.occupied, y.occupied);
            assert_eq!(x.holes, y.holes);
            assert_eq!(x.unknown, y.unknown);
        }
    }
}
