//! Sparse voxel storage keyed by integer cell coordinates.
//!
//! Cells hold occupancy state as natural-log odds, updated additively and
//! clamped to a configurable probability interval. Space is partitioned into
//! half-open cubes `[i*w, (i+1)*w)` of edge length `w`, so every point maps
//! to exactly one cell.

use std::collections::HashMap;

use nalgebra::Point3;

use crate::error::{Error, Result};

/// Integer coordinate of one voxel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VoxelKey {
    pub i: i32,
    pub j: i32,
    pub k: i32,
}

impl VoxelKey {
    pub fn new(i: i32, j: i32, k: i32) -> Self {
        Self { i, j, k }
    }

    pub fn offset(self, di: i32, dj: i32, dk: i32) -> Self {
        Self::new(self.i + di, self.j + dj, self.k + dk)
    }
}

impl From<(i32, i32, i32)> for VoxelKey {
    fn from((i, j, k): (i32, i32, i32)) -> Self {
        Self::new(i, j, k)
    }
}

/// Occupancy state of a single stored cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CellState {
    pub log_odds: f64,
}

impl CellState {
    pub fn probability(self) -> f64 {
        log_odds_to_prob(self.log_odds)
    }
}

/// Grid geometry plus the prior assigned to never-observed cells.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridConfig {
    /// Voxel edge length in meters.
    pub voxel_size: f64,
    /// Occupancy probability reported for unobserved cells.
    pub prior: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            voxel_size: 0.2,
            prior: 0.5,
        }
    }
}

impl GridConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.voxel_size.is_finite() || self.voxel_size <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "voxel size must be positive and finite, got {}",
                self.voxel_size
            )));
        }
        if !(self.prior > 0.0 && self.prior < 1.0) {
            return Err(Error::InvalidProbability { value: self.prior });
        }
        Ok(())
    }
}

/// ln(p / (1 - p))
pub fn prob_to_log_odds(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

/// 1 / (1 + e^(-l))
pub fn log_odds_to_prob(l: f64) -> f64 {
    1.0 / (1.0 + (-l).exp())
}

// Keys stay well clear of i32::MAX so traversal can step past a boundary
// without overflow.
const MAX_INDEX: f64 = (i32::MAX - 8) as f64;

/// Cell containing point `p`, by the half-open convention `[i*w, (i+1)*w)`.
pub fn key_from_point(p: &Point3<f64>, voxel_size: f64) -> Result<VoxelKey> {
    if !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()) {
        return Err(Error::NonFinite {
            context: "point coordinates",
        });
    }
    debug_assert!(voxel_size > 0.0);
    let idx = |v: f64| -> Result<i32> {
        let f = (v / voxel_size).floor();
        if f.abs() > MAX_INDEX {
            return Err(Error::CoordinateOutOfRange {
                value: v,
                voxel_size,
            });
        }
        Ok(f as i32)
    };
    Ok(VoxelKey::new(idx(p.x)?, idx(p.y)?, idx(p.z)?))
}

/// Center point of the cell identified by `key`.
pub fn voxel_center(key: VoxelKey, voxel_size: f64) -> Point3<f64> {
    Point3::new(
        (key.i as f64 + 0.5) * voxel_size,
        (key.j as f64 + 0.5) * voxel_size,
        (key.k as f64 + 0.5) * voxel_size,
    )
}

/// Result of one additive log-odds update.
#[derive(Clone, Copy, Debug)]
pub struct LogOddsUpdate {
    /// Log-odds stored after clamping.
    pub log_odds: f64,
    /// True if the clamp interval truncated the raw sum.
    pub clamped: bool,
}

/// Sparse map from voxel keys to clamped log-odds occupancy.
#[derive(Clone, Debug)]
pub struct OccupancyMap {
    config: GridConfig,
    min_log_odds: f64,
    max_log_odds: f64,
    cells: HashMap<VoxelKey, f64>,
}

impl OccupancyMap {
    /// Creates an empty map clamping occupancy to `[p_min, p_max]`.
    pub fn new(config: GridConfig, p_min: f64, p_max: f64) -> Result<Self> {
        config.validate()?;
        for p in [p_min, p_max] {
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::InvalidProbability { value: p });
            }
        }
        if p_min >= p_max {
            return Err(Error::InvalidConfig(format!(
                "clamp interval empty: p_min {p_min} >= p_max {p_max}"
            )));
        }
        if config.prior < p_min || config.prior > p_max {
            return Err(Error::InvalidConfig(format!(
                "prior {} outside clamp interval [{p_min}, {p_max}]",
                config.prior
            )));
        }
        Ok(Self {
            config,
            min_log_odds: prob_to_log_odds(p_min),
            max_log_odds: prob_to_log_odds(p_max),
            cells: HashMap::new(),
        })
    }

    /// Empty map with a 0.2 m grid, uniform prior and the 0.12/0.97 clamp.
    pub fn with_defaults() -> Self {
        Self::new(GridConfig::default(), 0.12, 0.97).expect("default configuration is valid")
    }

    pub fn config(&self) -> &GridConfig {
        &self.config
    }

    pub fn voxel_size(&self) -> f64 {
        self.config.voxel_size
    }

    /// Clamp interval in log-odds space.
    pub fn clamp_bounds(&self) -> (f64, f64) {
        (self.min_log_odds, self.max_log_odds)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Stored state of an observed cell; `None` if never updated.
    pub fn cell(&self, key: VoxelKey) -> Option<CellState> {
        self.cells.get(&key).map(|&log_odds| CellState { log_odds })
    }

    /// Occupancy probability; unobserved cells report the prior.
    pub fn occupancy(&self, key: VoxelKey) -> f64 {
        match self.cells.get(&key) {
            Some(&l) => log_odds_to_prob(l),
            None => self.config.prior,
        }
    }

    /// Adds `delta` to the cell's log-odds and clamps. Absent cells start at
    /// the prior's log-odds.
    pub fn apply_log_odds(&mut self, key: VoxelKey, delta: f64) -> Result<LogOddsUpdate> {
        if !delta.is_finite() {
            return Err(Error::NonFinite {
                context: "log-odds delta",
            });
        }
        let prior_log_odds = prob_to_log_odds(self.config.prior);
        let entry = self.cells.entry(key).or_insert(prior_log_odds);
        let raw = *entry + delta;
        let clamped = raw.clamp(self.min_log_odds, self.max_log_odds);
        *entry = clamped;
        Ok(LogOddsUpdate {
            log_odds: clamped,
            clamped: raw != clamped,
        })
    }

    /// Observed cells with occupancy strictly above `threshold`, in
    /// unspecified order.
    pub fn occupied_cells(&self, threshold: f64) -> impl Iterator<Item = (VoxelKey, f64)> + '_ {
        assert!(
            threshold > 0.0 && threshold < 1.0,
            "threshold must lie in (0, 1)"
        );
        self.cells.iter().filter_map(move |(&key, &l)| {
            let p = log_odds_to_prob(l);
            (p > threshold).then_some((key, p))
        })
    }

    /// All observed cells as (key, log-odds).
    pub fn iter(&self) -> impl Iterator<Item = (VoxelKey, f64)> + '_ {
        self.cells.iter().map(|(&k, &l)| (k, l))
    }
}
