//! Sparse 3D voxel occupancy mapping from range-sensor scans.
//!
//! The map fuses ray observations with a binary Bayes filter in log-odds
//! form. On top of the classic discrete update (fixed hit/miss
//! probabilities, one observation per cell per scan) it implements two
//! graded policies that keep every observation and scale it by the ray's
//! chord through each cell and by how many rays the sensor can even produce
//! at that distance:
//!
//! * [`sensor::UpdatePolicy::Baseline`] — discrete hit/miss model with hit
//!   priority within a scan.
//! * [`sensor::UpdatePolicy::Method1`] — chord-graded observations, hits and
//!   misses both attenuated by the distance weight `w(d)`.
//! * [`sensor::UpdatePolicy::Method2`] — chord-graded observations, misses
//!   attenuated, hits at full strength.
//!
//! The crate ships the analytic ray-density model behind `w(d)`
//! ([`density`]), an exact chord-length voxel walk ([`traversal`]),
//! readers/writers for the common binary point + pose file layout ([`io`]),
//! and a validation harness with brute-force counting oracles
//! ([`validate`]).
//!
//! Start with the runnable examples: `map_updates`, `ray_traversal`,
//! `density_model`, `sphere_validation`, `ground_plane`, `build_map` and
//! `scan_files`.

pub mod cli;
pub mod density;
pub mod error;
pub mod grid;
pub mod integrate;
pub mod io;
pub mod sensor;
pub mod traversal;
pub mod validate;

pub use error::{Error, Result};
pub use grid::{
    key_from_point, log_odds_to_prob, prob_to_log_odds, voxel_center, CellState, GridConfig,
    OccupancyMap, VoxelKey,
};
pub use integrate::{bayes_posterior, insert_scan, insert_scan_clamped, ClampMode, Scan,
    ScanInsertReport};
pub use sensor::{
    measurement_probability, Observation, SensorModelParams, UpdatePolicy,
};
pub use traversal::{chord_partition_check, traverse, Ray, TraversalSegment};
