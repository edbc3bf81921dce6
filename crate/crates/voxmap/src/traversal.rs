//! Exact voxel walk from a ray origin to its endpoint.
//!
//! The walk is an incremental grid-stepping traversal: for each axis it keeps
//! the ray parameter at which the next cell boundary is crossed and always
//! advances the nearest one. Boundary parameters are recomputed from integer
//! plane indices instead of accumulated, so chord lengths stay exact to a few
//! ulps over arbitrarily long rays.
//!
//! Per cell the traversal reports the Euclidean chord `lambda` traveled
//! inside the cell. For the cell containing a hit endpoint it also reports
//! `lambda_prime`, the residual from the impact point to the cell's exit
//! face along the extended ray direction.

use nalgebra::{Point3, Vector3};

use crate::error::{Error, Result};
use crate::grid::{key_from_point, VoxelKey};

/// A single range measurement in the world frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ray {
    pub origin: Point3<f64>,
    pub endpoint: Point3<f64>,
    /// True when the endpoint is an impact, false for a max-range return.
    pub is_hit: bool,
}

impl Ray {
    pub fn hit(origin: Point3<f64>, endpoint: Point3<f64>) -> Self {
        Self {
            origin,
            endpoint,
            is_hit: true,
        }
    }

    pub fn miss(origin: Point3<f64>, endpoint: Point3<f64>) -> Self {
        Self {
            origin,
            endpoint,
            is_hit: false,
        }
    }

    pub fn length(&self) -> f64 {
        (self.endpoint - self.origin).norm()
    }

    pub fn validate(&self) -> Result<()> {
        for p in [&self.origin, &self.endpoint] {
            if !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()) {
                return Err(Error::NonFinite {
                    context: "ray coordinates",
                });
            }
        }
        if self.origin == self.endpoint {
            return Err(Error::ZeroLengthRay {
                x: self.origin.x,
                y: self.origin.y,
                z: self.origin.z,
            });
        }
        Ok(())
    }
}

/// One traversed cell together with its chord geometry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraversalSegment {
    pub key: VoxelKey,
    /// Chord traveled inside the cell, in meters. For a hit cell this runs
    /// from the entry face to the impact point.
    pub lambda: f64,
    /// Hit cell only: impact point to exit face along the ray direction.
    pub lambda_prime: Option<f64>,
    pub terminal_hit: bool,
}

struct AxisState {
    /// Unit direction component; exactly 0.0 for axes the ray never crosses.
    dir: f64,
    /// +1 or -1 cell step when this axis's boundary is crossed.
    step: i64,
    /// Integer index of the next boundary plane (plane at `bound * w`).
    bound: i64,
    origin: f64,
}

impl AxisState {
    fn new(origin: f64, dir: f64, cell: i64) -> Self {
        let (step, bound) = if dir > 0.0 {
            (1, cell + 1)
        } else if dir < 0.0 {
            (-1, cell)
        } else {
            (0, 0)
        };
        Self {
            dir,
            step,
            bound,
            origin,
        }
    }

    /// Ray parameter (distance) at which the next boundary is crossed.
    fn next_crossing(&self, voxel_size: f64) -> f64 {
        if self.step == 0 {
            f64::INFINITY
        } else {
            (self.bound as f64 * voxel_size - self.origin) / self.dir
        }
    }

    fn advance(&mut self) {
        self.bound += self.step;
    }
}

/// Walks the consecutive voxels pierced by the segment origin -> endpoint.
///
/// Chords partition the ray length: the sum of all `lambda` equals the ray
/// length to floating-point accuracy. Boundary and corner crossings step all
/// tied axes at once; cells the ray only touches with a zero-length chord
/// are not reported. A hit endpoint lying exactly on a cell boundary belongs
/// to the far cell (half-open convention) and produces a terminal segment
/// with `lambda = 0` there.
pub fn traverse(ray: &Ray, voxel_size: f64) -> Result<Vec<TraversalSegment>> {
    ray.validate()?;
    if voxel_size <= 0.0 || voxel_size.is_nan() {
        return Err(Error::InvalidConfig(format!(
            "voxel size must be positive, got {voxel_size}"
        )));
    }

    let delta = ray.endpoint - ray.origin;
    let len = delta.norm();
    let dir = delta / len;

    let start = key_from_point(&ray.origin, voxel_size)?;
    // Endpoint key also validates that the whole ray stays indexable.
    let end_key = key_from_point(&ray.endpoint, voxel_size)?;

    let mut cell = [start.i as i64, start.j as i64, start.k as i64];
    let mut axes = [
        AxisState::new(ray.origin.x, dir.x, cell[0]),
        AxisState::new(ray.origin.y, dir.y, cell[1]),
        AxisState::new(ray.origin.z, dir.z, cell[2]),
    ];

    let mut segments = Vec::new();
    let mut t_prev = 0.0f64;

    loop {
        let crossings = [
            axes[0].next_crossing(voxel_size),
            axes[1].next_crossing(voxel_size),
            axes[2].next_crossing(voxel_size),
        ];
        let t_next = crossings[0].min(crossings[1]).min(crossings[2]);

        if t_next >= len {
            // Endpoint lies in the current cell or exactly on its exit face.
            finalize(
                ray, voxel_size, &mut segments, cell, t_prev, t_next, len, dir, end_key,
            );
            return Ok(segments);
        }

        let lambda = t_next - t_prev;
        if lambda > 0.0 {
            segments.push(TraversalSegment {
                key: VoxelKey::new(cell[0] as i32, cell[1] as i32, cell[2] as i32),
                lambda,
                lambda_prime: None,
                terminal_hit: false,
            });
        }
        // Step every axis whose boundary sits at t_next; simultaneous steps
        // skip the zero-chord neighbors of an edge or corner crossing.
        for (a, axis) in axes.iter_mut().enumerate() {
            if crossings[a] == t_next {
                cell[a] += axis.step;
                axis.advance();
            }
        }
        t_prev = t_next;
    }
}

#[allow(clippy::too_many_arguments)]
fn finalize(
    ray: &Ray,
    voxel_size: f64,
    segments: &mut Vec<TraversalSegment>,
    cell: [i64; 3],
    t_prev: f64,
    t_exit: f64,
    len: f64,
    dir: Vector3<f64>,
    end_key: VoxelKey,
) {
    let current = VoxelKey::new(cell[0] as i32, cell[1] as i32, cell[2] as i32);
    let lambda = (len - t_prev).max(0.0);

    if !ray.is_hit {
        if lambda > 0.0 {
            segments.push(TraversalSegment {
                key: current,
                lambda,
                lambda_prime: None,
                terminal_hit: false,
            });
        }
        return;
    }

    if end_key == current {
        segments.push(TraversalSegment {
            key: current,
            lambda,
            lambda_prime: Some((t_exit - len).max(0.0)),
            terminal_hit: true,
        });
        return;
    }

    // Impact exactly on a cell boundary: the walked cell is fully traversed
    // and the impact belongs to the neighboring cell that owns the face.
    if lambda > 0.0 {
        segments.push(TraversalSegment {
            key: current,
            lambda,
            lambda_prime: None,
            terminal_hit: false,
        });
    }
    segments.push(TraversalSegment {
        key: end_key,
        lambda: 0.0,
        lambda_prime: Some(exit_distance(end_key, &ray.endpoint, &dir, voxel_size)),
        terminal_hit: true,
    });
}

/// Distance from `point` to the exit face of `key`'s cube along `dir`.
fn exit_distance(key: VoxelKey, point: &Point3<f64>, dir: &Vector3<f64>, voxel_size: f64) -> f64 {
    let mut t = f64::INFINITY;
    let cell = [key.i as f64, key.j as f64, key.k as f64];
    for a in 0..3 {
        let d = dir[a];
        if d == 0.0 {
            continue;
        }
        let bound = if d > 0.0 { cell[a] + 1.0 } else { cell[a] };
        t = t.min((bound * voxel_size - point[a]) / d);
    }
    if t.is_finite() {
        t.max(0.0)
    } else {
        0.0
    }
}

/// Absolute difference between the summed chords and the ray length.
///
/// `lambda_prime` is excluded: it extends past the measured endpoint.
pub fn chord_partition_check(ray: &Ray, voxel_size: f64) -> Result<f64> {
    let total: f64 = traverse(ray, voxel_size)?.iter().map(|s| s.lambda).sum();
    Ok((total - ray.length()).abs())
}
