//! Closed-form model of how many sensor rays traverse a voxel at distance
//! `d`, and the measurement weight derived from it.
//!
//! A scanning range sensor with fixed vertical and horizontal angular
//! resolutions produces many observations of nearby cells and few of distant
//! ones. The expected ray count through a voxel is approximated from the
//! voxel's apparent angular extent, split into three cases by how many of
//! its faces the sensor can see: one (voxels straight along a grid axis),
//! two (voxels on the axis-aligned planes through the sensor) or three
//! (everything else). The blended expectation `rho(d)` is the
//! surface-fraction-weighted mean of the three cases, and the update weight
//! is `w(d) = min(1, rho(d) / gamma)`.

use crate::error::{Error, Result};

const SQRT2: f64 = std::f64::consts::SQRT_2;
const SQRT3: f64 = 1.7320508075688772;

/// Geometric guard margin, in meters, for the model's validity threshold.
pub const GEOM_EPS: f64 = 1e-9;

/// Beam spacing of the scanner, in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SensorAngularSpec {
    vertical_res: f64,
    horizontal_res: f64,
}

impl SensorAngularSpec {
    /// Builds the spec from resolutions in radians.
    pub fn from_radians(vertical_res: f64, horizontal_res: f64) -> Result<Self> {
        let half_pi = std::f64::consts::FRAC_PI_2;
        for (name, v) in [("vertical", vertical_res), ("horizontal", horizontal_res)] {
            if !(v > 0.0 && v < half_pi) {
                return Err(Error::InvalidConfig(format!(
                    "{name} angular resolution must lie in (0, pi/2) rad, got {v}"
                )));
            }
        }
        Ok(Self {
            vertical_res,
            horizontal_res,
        })
    }

    /// Builds the spec from resolutions quoted in degrees, the usual way
    /// scanner data sheets state them.
    pub fn from_degrees(vertical_deg: f64, horizontal_deg: f64) -> Result<Self> {
        Self::from_radians(vertical_deg.to_radians(), horizontal_deg.to_radians())
    }

    pub fn vertical_res(&self) -> f64 {
        self.vertical_res
    }

    pub fn horizontal_res(&self) -> f64 {
        self.horizontal_res
    }
}

/// Everything needed to evaluate the ray-count model and the weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityParams {
    pub spec: SensorAngularSpec,
    /// Voxel edge length in meters.
    pub voxel_size: f64,
    /// Ray-count scale at which updates stop being attenuated.
    pub gamma: f64,
}

impl DensityParams {
    pub fn new(spec: SensorAngularSpec, voxel_size: f64, gamma: f64) -> Result<Self> {
        let params = Self {
            spec,
            voxel_size,
            gamma,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.voxel_size > 0.0 && self.voxel_size.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "voxel size must be positive, got {}",
                self.voxel_size
            )));
        }
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "gamma must be positive, got {}",
                self.gamma
            )));
        }
        Ok(())
    }

    /// Smallest distance at which the per-case expressions are defined.
    pub fn min_valid_distance(&self) -> f64 {
        SQRT3 * self.voxel_size / 2.0 + GEOM_EPS
    }
}

impl Default for DensityParams {
    /// HDL-64E-like scanner on a 0.2 m grid with gamma = 32.
    fn default() -> Self {
        Self {
            spec: SensorAngularSpec::from_degrees(0.4, 0.16).expect("static resolutions valid"),
            voxel_size: 0.2,
            gamma: 32.0,
        }
    }
}

/// Number of voxel faces facing the sensor; selects the apparent-extent case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceCase {
    /// One face visible: voxels straight along a grid axis. Lower bound.
    One,
    /// Two faces visible: voxels on the axis-aligned planes.
    Two,
    /// Three faces visible: voxels in generic position. Upper bound.
    Three,
}

/// Expected ray count through a voxel at distance `d` for one face case.
pub fn alpha(case: FaceCase, distance: f64, params: &DensityParams) -> Result<f64> {
    let w = params.voxel_size;
    let threshold = params.min_valid_distance();
    if distance <= threshold || distance.is_nan() {
        return Err(Error::BelowModelRange {
            distance,
            threshold,
        });
    }
    // Apparent vertical and horizontal extents of the visible silhouette.
    let (v_num, h_num, denom_edge) = match case {
        FaceCase::One => (w, w, w),
        FaceCase::Two => (SQRT2 * w, w, SQRT2 * w),
        FaceCase::Three => (SQRT3 * w, SQRT2 * w, SQRT3 * w),
    };
    let denom = 2.0 * distance - denom_edge;
    let vertical = (2.0 / params.spec.vertical_res) * (v_num / denom).atan();
    let horizontal = (2.0 / params.spec.horizontal_res) * (h_num / denom).atan();
    Ok(vertical * horizontal)
}

/// Surface-fraction weights of the three face cases on a sphere of radius
/// `d` tiled with voxels of the configured size.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EtaWeights {
    pub one: f64,
    pub two: f64,
    pub three: f64,
    /// Recomposed from the three parts so the partition sums exactly.
    pub total: f64,
}

/// Approximate voxel counts per face case at the surface of a sphere.
///
/// The two- and three-face counts are asymptotic expressions that go
/// negative very close to the sensor; they are clamped at zero there.
pub fn eta(distance: f64, params: &DensityParams) -> Result<EtaWeights> {
    if distance <= 0.0 || distance.is_nan() {
        return Err(Error::NonPositiveDistance { distance });
    }
    let w = params.voxel_size;
    let surface = 4.0 * std::f64::consts::PI * distance * distance / (w * w);
    let one = 6.0;
    let two = (3.0 * (2.0 * std::f64::consts::PI * distance / w) - 12.0).max(0.0);
    let three = (surface - one - two).max(0.0);
    Ok(EtaWeights {
        one,
        two,
        three,
        total: one + two + three,
    })
}

/// Blended expected ray count: the eta-weighted mean of the three cases.
pub fn rho(distance: f64, params: &DensityParams) -> Result<f64> {
    let weights = eta(distance, params)?;
    let a1 = alpha(FaceCase::One, distance, params)?;
    let a2 = alpha(FaceCase::Two, distance, params)?;
    let a3 = alpha(FaceCase::Three, distance, params)?;
    Ok((weights.one * a1 + weights.two * a2 + weights.three * a3) / weights.total)
}

/// Measurement weight `min(1, rho(d) / gamma)`.
///
/// Total on positive distances: below the model's validity threshold the
/// expected ray count is enormous, so the weight saturates at 1.
pub fn weight(distance: f64, params: &DensityParams) -> f64 {
    debug_assert!(distance > 0.0);
    match rho(distance, params) {
        Ok(r) => (r / params.gamma).min(1.0),
        Err(_) => 1.0,
    }
}
