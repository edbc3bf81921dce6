//! Inserts whole scans into the map.
//!
//! Every ray is walked through the grid, each traversed cell yields one
//! observation, observations are converted to log-odds, summed per cell and
//! committed once per scan with clamping. The discrete baseline policy first
//! collapses each cell's observations to a single one (hits win). A
//! per-measurement clamp mode is available for comparison; it applies and
//! clamps every observation individually in ray order.

use std::collections::HashMap;

use nalgebra::Point3;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{prob_to_log_odds, voxel_center, OccupancyMap, VoxelKey};
use crate::sensor::{
    baseline_cell_reduce, measurement_probability, MeasurementKind, Observation,
    SensorModelParams, UpdatePolicy,
};
use crate::traversal::{traverse, Ray};

/// One sensor revolution: an origin plus world-frame ray endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct Scan {
    pub origin: Point3<f64>,
    pub points: Vec<Point3<f64>>,
    /// Per-point flag: true for an impact, false for a max-range return.
    pub hit_flags: Vec<bool>,
}

impl Scan {
    pub fn new(origin: Point3<f64>) -> Self {
        Self {
            origin,
            points: Vec::new(),
            hit_flags: Vec::new(),
        }
    }

    pub fn push(&mut self, endpoint: Point3<f64>, is_hit: bool) {
        self.points.push(endpoint);
        self.hit_flags.push(is_hit);
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn rays(&self) -> impl Iterator<Item = Ray> + '_ {
        self.points
            .iter()
            .zip(&self.hit_flags)
            .map(|(&endpoint, &is_hit)| Ray {
                origin: self.origin,
                endpoint,
                is_hit,
            })
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.len() != self.hit_flags.len() {
            return Err(Error::ScanLengthMismatch {
                points: self.points.len(),
                flags: self.hit_flags.len(),
            });
        }
        let finite = |p: &Point3<f64>| p.x.is_finite() && p.y.is_finite() && p.z.is_finite();
        if !finite(&self.origin) || !self.points.iter().all(finite) {
            return Err(Error::NonFinite {
                context: "scan coordinates",
            });
        }
        Ok(())
    }
}

/// Counters describing one scan insertion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanInsertReport {
    pub rays_processed: usize,
    /// Distinct cells that received a committed update.
    pub cells_touched: usize,
    /// Hit observations produced by traversal (before any policy filtering).
    pub hits: usize,
    /// Miss observations produced by traversal (before any policy filtering).
    pub misses: usize,
    /// Cells whose committed update was truncated by the clamp interval.
    pub clamped_cells: usize,
}

/// When the clamp interval is enforced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClampMode {
    /// Sum a scan's observations per cell, commit and clamp once.
    PerScan,
    /// Apply and clamp every observation individually, in ray order.
    PerMeasurement,
}

impl std::str::FromStr for ClampMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per-scan" => Ok(ClampMode::PerScan),
            "per-measurement" => Ok(ClampMode::PerMeasurement),
            other => Err(Error::InvalidConfig(format!(
                "unknown clamp mode '{other}' (expected per-scan or per-measurement)"
            ))),
        }
    }
}

/// Recursive update of the occupancy posterior with one observation, under a
/// uniform 0.5 map prior. Serves as the reference oracle for the log-odds
/// accumulation path.
pub fn bayes_posterior(prior: f64, observation: f64) -> Result<f64> {
    for value in [prior, observation] {
        if !(value > 0.0 && value < 1.0) {
            return Err(Error::InvalidProbability { value });
        }
    }
    let odds = ((1.0 - prior) / prior) * ((1.0 - observation) / observation);
    Ok(1.0 / (1.0 + odds))
}

/// Inserts `scan` with per-scan clamping (the default mode).
pub fn insert_scan(
    map: &mut OccupancyMap,
    scan: &Scan,
    policy: UpdatePolicy,
    params: &SensorModelParams,
) -> Result<ScanInsertReport> {
    insert_scan_clamped(map, scan, policy, params, ClampMode::PerScan)
}

/// Inserts `scan` under `policy`, with the clamp applied per scan or per
/// measurement.
///
/// Rays whose endpoint coincides with the origin carry no geometry and are
/// skipped, as are neutral observations (probability exactly 0.5) and hit
/// segments degenerated to a zero total chord.
pub fn insert_scan_clamped(
    map: &mut OccupancyMap,
    scan: &Scan,
    policy: UpdatePolicy,
    params: &SensorModelParams,
    mode: ClampMode,
) -> Result<ScanInsertReport> {
    params.validate()?;
    scan.validate()?;
    if (params.voxel_size() - map.voxel_size()).abs() > 1e-12 {
        return Err(Error::InvalidConfig(format!(
            "sensor model voxel size {} does not match map voxel size {}",
            params.voxel_size(),
            map.voxel_size()
        )));
    }

    let mut report = ScanInsertReport::default();
    if scan.is_empty() {
        return Ok(report);
    }

    let voxel_size = map.voxel_size();
    // Per-scan log-odds sums (Method1/Method2, per-scan mode).
    let mut accumulated: HashMap<VoxelKey, f64> = HashMap::new();
    // Per-cell observation lists (Baseline).
    let mut grouped: HashMap<VoxelKey, Vec<Observation>> = HashMap::new();

    for ray in scan.rays() {
        if ray.origin == ray.endpoint {
            continue;
        }
        report.rays_processed += 1;
        for segment in traverse(&ray, voxel_size)? {
            let observation = if segment.terminal_hit {
                report.hits += 1;
                Observation::Hit {
                    lambda: segment.lambda,
                    lambda_prime: segment.lambda_prime.unwrap_or(0.0),
                }
            } else {
                report.misses += 1;
                Observation::Miss {
                    lambda: segment.lambda,
                }
            };

            if policy == UpdatePolicy::Baseline {
                grouped.entry(segment.key).or_default().push(observation);
                continue;
            }

            // Zero-information geometry: nothing to apply.
            if let Observation::Hit {
                lambda,
                lambda_prime,
            } = observation
            {
                if lambda + lambda_prime <= 0.0 {
                    continue;
                }
            }

            let distance = (voxel_center(segment.key, voxel_size) - scan.origin).norm();
            let probability = measurement_probability(policy, observation, distance, params)?;
            if probability == 0.5 {
                continue;
            }
            let delta = prob_to_log_odds(probability);
            match mode {
                ClampMode::PerScan => {
                    *accumulated.entry(segment.key).or_insert(0.0) += delta;
                }
                ClampMode::PerMeasurement => {
                    let update = map.apply_log_odds(segment.key, delta)?;
                    accumulated.entry(segment.key).or_insert(0.0);
                    if update.clamped {
                        report.clamped_cells += 1;
                    }
                }
            }
        }
    }

    match policy {
        UpdatePolicy::Baseline => {
            let l_occ = prob_to_log_odds(params.p_occ);
            let l_free = prob_to_log_odds(params.p_free);
            for (key, observations) in &grouped {
                let Some(kind) = baseline_cell_reduce(observations) else {
                    continue;
                };
                let delta = match kind {
                    MeasurementKind::Hit => l_occ,
                    MeasurementKind::Miss => l_free,
                };
                let update = map.apply_log_odds(*key, delta)?;
                report.cells_touched += 1;
                if update.clamped {
                    report.clamped_cells += 1;
                }
            }
        }
        UpdatePolicy::Method1 | UpdatePolicy::Method2 => match mode {
            ClampMode::PerScan => {
                for (&key, &delta) in &accumulated {
                    if delta == 0.0 {
                        continue;
                    }
                    let update = map.apply_log_odds(key, delta)?;
                    report.cells_touched += 1;
                    if update.clamped {
                        report.clamped_cells += 1;
                    }
                }
            }
            ClampMode::PerMeasurement => {
                report.cells_touched = accumulated.len();
            }
        },
    }

    Ok(report)
}
