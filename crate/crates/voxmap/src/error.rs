use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the mapping core and the file readers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite input: {context}")]
    NonFinite { context: &'static str },

    #[error("coordinate out of indexable range: {value} at voxel size {voxel_size}")]
    CoordinateOutOfRange { value: f64, voxel_size: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("probability must lie strictly inside (0, 1), got {value}")]
    InvalidProbability { value: f64 },

    #[error("ray origin and endpoint coincide at ({x}, {y}, {z})")]
    ZeroLengthRay { x: f64, y: f64, z: f64 },

    /// Distance is too close to the sensor for the ray-count model; callers
    /// that want the saturated behaviour should use `weight` instead.
    #[error("distance {distance} below model validity threshold {threshold}")]
    BelowModelRange { distance: f64, threshold: f64 },

    #[error("distance must be positive, got {distance}")]
    NonPositiveDistance { distance: f64 },

    #[error("chord length {lambda} exceeds the voxel body diagonal {max}")]
    ChordTooLong { lambda: f64, max: f64 },

    #[error("hit observation with zero total chord carries no geometry")]
    DegenerateHit,

    #[error("scan holds {points} points but {flags} hit flags")]
    ScanLengthMismatch { points: usize, flags: usize },

    #[error("{path}: i/o error: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: truncated point record at byte offset {offset}")]
    TruncatedPointFile { path: PathBuf, offset: u64 },

    #[error("{path}:{line}: {message}")]
    PoseParse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}:{line}: rotation not orthonormal (deviation {deviation:.3e})")]
    PoseNotOrthonormal {
        path: PathBuf,
        line: usize,
        deviation: f64,
    },

    #[error("input path does not exist: {path}")]
    MissingInput { path: PathBuf },

    #[error("{frames} frames requested but only {poses} poses available")]
    FrameCountMismatch { frames: usize, poses: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
