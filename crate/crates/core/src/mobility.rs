//! UE trajectories, BS–UE geometry, angle synthesis and Doppler phase.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Positions are in meters.
pub type Position3 = Vec3;

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(&self, o: &Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn sub(&self, o: &Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }

    pub fn add(&self, o: &Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }

    pub fn scale(&self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl From<Vec3> for [f64; 3] {
    fn from(v: Vec3) -> Self {
        [v.x, v.y, v.z]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrackKind {
    /// Horizontal circle around `center` (which sits at UE height).
    Circular { center: Position3, radius: f64, initial_phase: f64, direction: f64 },
    /// Straight line from `start` along the unit vector `direction`.
    Linear { start: Position3, direction: Vec3 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackSpec {
    pub kind: TrackKind,
    /// m/s. Zero gives a static UE.
    pub speed: f64,
}

impl TrackSpec {
    pub fn circular(center: Position3, radius: f64, initial_phase: f64, direction: f64, speed: f64) -> Result<Self> {
        let t = Self { kind: TrackKind::Circular { center, radius, initial_phase, direction }, speed };
        t.validate()?;
        Ok(t)
    }

    pub fn linear(start: Position3, direction: Vec3, speed: f64) -> Result<Self> {
        let t = Self { kind: TrackKind::Linear { start, direction }, speed };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.speed.is_finite() && self.speed >= 0.0) {
            return Err(Error::Argument(format!("track speed must be finite and ≥ 0, got {}", self.speed)));
        }
        match self.kind {
            TrackKind::Circular { center, radius, initial_phase, direction } => {
                if !(radius.is_finite() && radius > 0.0) {
                    return Err(Error::Argument(format!("circular track radius must be > 0, got {radius}")));
                }
                if direction != 1.0 && direction != -1.0 {
                    return Err(Error::Argument(format!("circular track direction must be ±1, got {direction}")));
                }
                if !center.is_finite() || !initial_phase.is_finite() {
                    return Err(Error::Argument("circular track has non-finite parameters".into()));
                }
            }
            TrackKind::Linear { start, direction } => {
                if !start.is_finite() || (direction.norm() - 1.0).abs() > 1e-9 {
                    return Err(Error::Argument("linear track direction must be a unit vector".into()));
                }
                if direction.z != 0.0 {
                    return Err(Error::Argument("linear track must keep the UE height constant".into()));
                }
            }
        }
        Ok(())
    }
}

/// Elevation/azimuth pair, radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleState {
    pub mean_elevation: f64,
    pub mean_azimuth: f64,
    pub elevation: f64,
    pub azimuth: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UeState {
    pub position: Position3,
    pub velocity: Vec3,
    pub angles: AngleState,
    /// Accumulated Doppler phase, radians.
    pub doppler_phase: f64,
}

/// Position and velocity after `tti` intervals of `tti_len` seconds.
pub fn advance_track(track: &TrackSpec, tti: u64, tti_len: f64) -> (Position3, Vec3) {
    let t = tti as f64 * tti_len;
    let v = track.speed;
    match track.kind {
        TrackKind::Circular { center, radius, initial_phase, direction } => {
            let omega = direction * v / radius;
            let phase = initial_phase + omega * t;
            let (s, c) = phase.sin_cos();
            let position = center.add(&Vec3::new(radius * c, radius * s, 0.0));
            let velocity = Vec3::new(-s, c, 0.0).scale(direction * v);
            (position, velocity)
        }
        TrackKind::Linear { start, direction } => (start.add(&direction.scale(v * t)), direction.scale(v)),
    }
}

/// Unit vector from the BS to the UE.
pub fn relative_direction(bs: &Position3, ue: &Position3) -> Result<Vec3> {
    let d = ue.sub(bs);
    let n = d.norm();
    if n == 0.0 || !n.is_finite() {
        return Err(Error::Geometry("BS and UE positions coincide".into()));
    }
    Ok(d.scale(1.0 / n))
}

/// Mean `(elevation, azimuth)` of a unit direction. Azimuth uses the
/// quadrant-aware arctangent and is 0 at the zenith.
pub fn mean_angles(d: &Vec3) -> Result<(f64, f64)> {
    if (d.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::Argument(format!("direction must be unit norm, got ‖d‖ = {}", d.norm())));
    }
    let elevation = d.z.clamp(-1.0, 1.0).asin();
    let azimuth = if d.x == 0.0 && d.y == 0.0 { 0.0 } else { d.y.atan2(d.x) };
    Ok((elevation, azimuth))
}

/// Unit direction for given angles; inverse of [`mean_angles`].
pub fn direction_from_angles(elevation: f64, azimuth: f64) -> Vec3 {
    let (se, ce) = elevation.sin_cos();
    let (sa, ca) = azimuth.sin_cos();
    Vec3::new(ce * ca, ce * sa, se)
}

/// Adds independent zero-mean Gaussian angle errors (standard deviations in radians).
pub fn perturb_angles(
    mean_elevation: f64,
    mean_azimuth: f64,
    sigma_elevation: f64,
    sigma_azimuth: f64,
    rng: &mut RngStream,
) -> (f64, f64) {
    // Both draws are always consumed so stream positions do not depend on σ.
    let xe = rng.standard_normal();
    let xa = rng.standard_normal();
    (mean_elevation + sigma_elevation * xe, mean_azimuth + sigma_azimuth * xa)
}

/// LOS wave vector `(2π/λ)[cosθ cosφ, cosθ sinφ, sinθ]`, rad/m.
pub fn wave_vector(elevation: f64, azimuth: f64, wavelength: f64) -> Vec3 {
    direction_from_angles(elevation, azimuth).scale(2.0 * PI / wavelength)
}

/// Doppler phase after one TTI: `ψ + (kᵀv)·T`.
pub fn doppler_phase_step(k: &Vec3, velocity: &Vec3, tti_len: f64, prev: f64) -> f64 {
    prev + k.dot(velocity) * tti_len
}

/// How the LOS phasor evolves between TTIs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DopplerMode {
    /// `ψ[n] = ψ[n−1] + kᵀv·T`.
    #[default]
    Accumulate,
    /// `ψ[n] = kᵀv`, the rate used directly as a phase.
    Instantaneous,
}

impl DopplerMode {
    pub fn next_phase(self, k: &Vec3, velocity: &Vec3, tti_len: f64, prev: f64) -> f64 {
        match self {
            DopplerMode::Accumulate => doppler_phase_step(k, velocity, tti_len, prev),
            DopplerMode::Instantaneous => k.dot(velocity),
        }
    }
}
