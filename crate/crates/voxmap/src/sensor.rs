//! Per-measurement occupancy probabilities for the three update policies.
//!
//! The discrete baseline assigns fixed probabilities: `p_occ` for a cell
//! containing an impact, `p_free` for a traversed cell, one observation per
//! cell per scan with hits taking priority.
//!
//! The two chord-weighted policies grade each observation by how much of the
//! cell the ray actually covered. A miss scales the free excursion by the
//! chord over the body diagonal, the longest chord a ray can have. A hit
//! scales the occupied excursion by the residual past the impact over the
//! chord the ray would have had without the obstacle. The distance weight
//! `w(d)` additionally attenuates observations of far cells, where the
//! sensor produces few rays: under `Method1` it applies to every
//! observation, under `Method2` to misses only, leaving hits at full
//! strength.

use std::collections::HashMap;

use crate::density::{self, DensityParams};
use crate::error::{Error, Result};
use crate::grid::VoxelKey;

const SQRT3: f64 = 1.7320508075688772;

/// Probabilities and density model driving the update policies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SensorModelParams {
    /// Observation probability for a hit at full strength.
    pub p_occ: f64,
    /// Observation probability for a full-diagonal miss.
    pub p_free: f64,
    /// Lower occupancy clamp.
    pub p_min: f64,
    /// Upper occupancy clamp.
    pub p_max: f64,
    pub density: DensityParams,
}

impl Default for SensorModelParams {
    fn default() -> Self {
        Self {
            p_occ: 0.7,
            p_free: 0.4,
            p_min: 0.12,
            p_max: 0.97,
            density: DensityParams::default(),
        }
    }
}

impl SensorModelParams {
    pub fn validate(&self) -> Result<()> {
        self.density.validate()?;
        let ordered = 0.0 < self.p_min
            && self.p_min < self.p_free
            && self.p_free < 0.5
            && 0.5 < self.p_occ
            && self.p_occ < self.p_max
            && self.p_max < 1.0;
        if !ordered {
            return Err(Error::InvalidConfig(format!(
                "probabilities must satisfy 0 < p_min < p_free < 0.5 < p_occ < p_max < 1, \
                 got p_min {} p_free {} p_occ {} p_max {}",
                self.p_min, self.p_free, self.p_occ, self.p_max
            )));
        }
        Ok(())
    }

    pub fn voxel_size(&self) -> f64 {
        self.density.voxel_size
    }
}

/// Which update rule a scan insertion uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpdatePolicy {
    /// Discrete model: one observation per cell per scan, hits win.
    Baseline,
    /// Chord-graded observations, all weighted by `w(d)`.
    Method1,
    /// Chord-graded observations, only misses weighted by `w(d)`.
    Method2,
}

impl UpdatePolicy {
    pub const ALL: [UpdatePolicy; 3] =
        [UpdatePolicy::Baseline, UpdatePolicy::Method1, UpdatePolicy::Method2];

    pub fn name(&self) -> &'static str {
        match self {
            UpdatePolicy::Baseline => "baseline",
            UpdatePolicy::Method1 => "m1",
            UpdatePolicy::Method2 => "m2",
        }
    }
}

impl std::fmt::Display for UpdatePolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for UpdatePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "baseline" | "octomap" => Ok(UpdatePolicy::Baseline),
            "m1" | "method1" => Ok(UpdatePolicy::Method1),
            "m2" | "method2" => Ok(UpdatePolicy::Method2),
            other => Err(Error::InvalidConfig(format!(
                "unknown policy '{other}' (expected baseline, m1 or m2)"
            ))),
        }
    }
}

/// Hit or miss, without chord geometry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasurementKind {
    Hit,
    Miss,
}

/// One ray's observation of one cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Observation {
    /// Terminal cell of a hit ray: `lambda` from entry face to impact,
    /// `lambda_prime` from impact to exit face.
    Hit { lambda: f64, lambda_prime: f64 },
    /// Traversed cell: `lambda` is the chord inside the cell.
    Miss { lambda: f64 },
}

impl Observation {
    pub fn kind(&self) -> MeasurementKind {
        match self {
            Observation::Hit { .. } => MeasurementKind::Hit,
            Observation::Miss { .. } => MeasurementKind::Miss,
        }
    }

    pub fn is_hit(&self) -> bool {
        matches!(self, Observation::Hit { .. })
    }
}

/// Occupancy probability assigned to one observation under `policy`.
///
/// `distance` is measured from the sensor origin to the updated voxel's
/// center and only drives the weight `w(d)`. The result always lies in
/// `[p_free, p_occ]`; chord ratios are clamped at 1 so floating-point
/// overshoot in the traversal cannot push past the anchors.
pub fn measurement_probability(
    policy: UpdatePolicy,
    observation: Observation,
    distance: f64,
    params: &SensorModelParams,
) -> Result<f64> {
    let diag = SQRT3 * params.voxel_size();
    let check_lambda = |lambda: f64| -> Result<()> {
        if lambda < 0.0 || lambda.is_nan() {
            return Err(Error::InvalidConfig(format!(
                "chord must be non-negative, got {lambda}"
            )));
        }
        if lambda > diag + density::GEOM_EPS {
            return Err(Error::ChordTooLong {
                lambda,
                max: diag,
            });
        }
        Ok(())
    };

    match observation {
        Observation::Hit {
            lambda,
            lambda_prime,
        } => {
            check_lambda(lambda)?;
            check_lambda(lambda_prime)?;
            if lambda + lambda_prime <= 0.0 {
                return Err(Error::DegenerateHit);
            }
            match policy {
                UpdatePolicy::Baseline => Ok(params.p_occ),
                UpdatePolicy::Method1 => {
                    let ratio = (lambda_prime / (lambda + lambda_prime)).min(1.0);
                    let excursion = (params.p_occ - 0.5) * ratio;
                    Ok(0.5 + excursion * density::weight(distance, &params.density))
                }
                UpdatePolicy::Method2 => {
                    let ratio = (lambda_prime / (lambda + lambda_prime)).min(1.0);
                    Ok(0.5 + (params.p_occ - 0.5) * ratio)
                }
            }
        }
        Observation::Miss { lambda } => {
            check_lambda(lambda)?;
            match policy {
                UpdatePolicy::Baseline => Ok(params.p_free),
                UpdatePolicy::Method1 | UpdatePolicy::Method2 => {
                    let ratio = (lambda / diag).min(1.0);
                    let excursion = (0.5 - params.p_free) * ratio;
                    Ok(0.5 - excursion * density::weight(distance, &params.density))
                }
            }
        }
    }
}

/// Collapses one cell's observations from a single scan to the one
/// observation the baseline policy applies: a hit if any impact occurred,
/// otherwise a miss. Returns `None` for an empty group.
pub fn baseline_cell_reduce(observations: &[Observation]) -> Option<MeasurementKind> {
    if observations.is_empty() {
        return None;
    }
    if observations.iter().any(Observation::is_hit) {
        Some(MeasurementKind::Hit)
    } else {
        Some(MeasurementKind::Miss)
    }
}

/// Applies [`baseline_cell_reduce`] to every cell of a grouped scan.
pub fn baseline_scan_filter(
    grouped: &HashMap<VoxelKey, Vec<Observation>>,
) -> HashMap<VoxelKey, MeasurementKind> {
    grouped
        .iter()
        .filter_map(|(&key, obs)| baseline_cell_reduce(obs).map(|kind| (key, kind)))
        .collect()
}
