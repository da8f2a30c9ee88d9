//! Scenario configuration: JSON document, defaults, validation.

use std::io::Read;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::channel::{ArrayGeometry, ChannelParams, Isotropic};
use crate::error::{Error, Result};
use crate::linalg::Covariance;
use crate::mobility::{DopplerMode, TrackSpec, Vec3};
use crate::precoding::{tzf_feasible, Method, ProjectorRank};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ArrayConfig {
    pub m_h: usize,
    pub m_v: usize,
    pub spacing_wavelengths: f64,
    pub carrier_hz: f64,
}

impl Default for ArrayConfig {
    fn default() -> Self {
        Self { m_h: 16, m_v: 16, spacing_wavelengths: 0.5, carrier_hz: 6e9 }
    }
}

/// Standard deviations of the per-TTI angle errors, degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AngleSpread {
    pub elevation: f64,
    pub azimuth: f64,
}

impl Default for AngleSpread {
    fn default() -> Self {
        Self { elevation: 1.0, azimuth: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrackPreset {
    /// Concentric circles around the BS ground point, radii 20, 35, 50, … m, phases evenly spread.
    Circular,
    /// Parallel straight lines heading +y, 15 m apart.
    Linear,
}

/// One UE trajectory; coordinates in meters, angles in degrees. UE height and speed are global.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TrackConfig {
    Circular {
        center_xy: [f64; 2],
        radius_m: f64,
        initial_phase_deg: f64,
        #[serde(default = "counter_clockwise")]
        direction: f64,
    },
    Linear {
        start_xy: [f64; 2],
        heading_deg: f64,
    },
}

fn counter_clockwise() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TracksConfig {
    Preset(TrackPreset),
    Custom(Vec<TrackConfig>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TzfUpdatePolicy {
    /// Horizontal and vertical parts redesigned at every uplink slot.
    #[default]
    Both,
    /// Vertical part kept from the first uplink slot.
    VerticalOnce,
    /// Runs both policies side by side on the same channels.
    Compare,
}

/// Where tensor precoders get their sub-array CSI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CsiMode {
    /// LS estimate from the sub-array rows of the observation only.
    #[default]
    Subarray,
    /// Full-array LS estimate, then gathered.
    Gather,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub array: ArrayConfig,
    pub ue_count: usize,
    /// `null` means pure LOS.
    pub k_factor_db: Option<f64>,
    pub snr_ul_db: f64,
    pub snr_dl_db: f64,
    pub angle_spread_deg: AngleSpread,
    pub tti_len_s: f64,
    pub total_ttis: u64,
    pub uplink_period_ttis: u64,
    /// Channel draws per sampled TTI in the subspace experiment.
    pub realizations: usize,
    pub subspace_stride: u64,
    /// Monte-Carlo runs averaged by the sum-rate experiment.
    pub sumrate_realizations: usize,
    /// Timed designs per method in the runtime experiment.
    pub runtime_designs: usize,
    pub tracks: TracksConfig,
    pub bs_position: [f64; 3],
    pub ue_height_m: f64,
    pub speed_mps: f64,
    pub precoders: Vec<Method>,
    pub tzf_update_policy: TzfUpdatePolicy,
    pub projector_rank: ProjectorRank,
    pub csi_mode: CsiMode,
    pub doppler_mode: DopplerMode,
    /// Defaults to `ue_count`.
    pub pilot_length: Option<usize>,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            array: ArrayConfig::default(),
            ue_count: 3,
            k_factor_db: Some(20.0),
            snr_ul_db: 20.0,
            snr_dl_db: 10.0,
            angle_spread_deg: AngleSpread::default(),
            tti_len_s: 1e-3,
            total_ttis: 1000,
            uplink_period_ttis: 250,
            realizations: 256,
            subspace_stride: 1,
            sumrate_realizations: 64,
            runtime_designs: 1000,
            tracks: TracksConfig::Preset(TrackPreset::Circular),
            bs_position: [0.0, 0.0, 25.0],
            ue_height_m: 1.5,
            speed_mps: 30.0,
            precoders: Method::ALL.to_vec(),
            tzf_update_policy: TzfUpdatePolicy::Both,
            projector_rank: ProjectorRank::Fixed,
            csi_mode: CsiMode::Subarray,
            doppler_mode: DopplerMode::Accumulate,
            pilot_length: None,
            seed: 0,
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

fn non_negative(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be non-negative and finite, got {v}")))
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let a = &self.array;
        if a.m_h == 0 || a.m_v == 0 {
            return Err(invalid(format!("array.m_h and array.m_v must be ≥ 1, got {}x{}", a.m_h, a.m_v)));
        }
        positive("array.spacing_wavelengths", a.spacing_wavelengths)?;
        positive("array.carrier_hz", a.carrier_hz)?;
        if self.ue_count == 0 {
            return Err(invalid("ue_count must be ≥ 1"));
        }
        if let Some(k) = self.k_factor_db {
            if !k.is_finite() {
                return Err(invalid(format!("k_factor_db must be finite or null, got {k}")));
            }
        }
        for (name, v) in [("snr_ul_db", self.snr_ul_db), ("snr_dl_db", self.snr_dl_db)] {
            if !v.is_finite() {
                return Err(invalid(format!("{name} must be finite, got {v}")));
            }
        }
        non_negative("angle_spread_deg.elevation", self.angle_spread_deg.elevation)?;
        non_negative("angle_spread_deg.azimuth", self.angle_spread_deg.azimuth)?;
        positive("tti_len_s", self.tti_len_s)?;
        if self.uplink_period_ttis == 0 {
            return Err(invalid("uplink_period_ttis must be ≥ 1"));
        }
        if self.total_ttis < self.uplink_period_ttis {
            return Err(invalid(format!(
                "total_ttis ({}) must be ≥ uplink_period_ttis ({})",
                self.total_ttis, self.uplink_period_ttis
            )));
        }
        for (name, v) in [
            ("realizations", self.realizations),
            ("sumrate_realizations", self.sumrate_realizations),
            ("runtime_designs", self.runtime_designs),
        ] {
            if v == 0 {
                return Err(invalid(format!("{name} must be ≥ 1")));
            }
        }
        if self.subspace_stride == 0 {
            return Err(invalid("subspace_stride must be ≥ 1"));
        }
        non_negative("speed_mps", self.speed_mps)?;
        if !self.bs_position.iter().all(|v| v.is_finite()) || !self.ue_height_m.is_finite() {
            return Err(invalid("bs_position and ue_height_m must be finite"));
        }
        if self.precoders.is_empty() {
            return Err(invalid("precoders must list at least one method"));
        }
        for (i, m) in self.precoders.iter().enumerate() {
            if self.precoders[..i].contains(m) {
                return Err(invalid(format!("precoder {m} listed twice")));
            }
        }
        if let Some(l) = self.pilot_length {
            if l < self.ue_count {
                return Err(invalid(format!("pilot_length ({l}) must be ≥ ue_count ({})", self.ue_count)));
            }
        }
        if let TracksConfig::Custom(t) = &self.tracks {
            if t.len() != self.ue_count {
                return Err(invalid(format!("{} tracks given for {} UEs", t.len(), self.ue_count)));
            }
        }
        self.track_specs()?;
        Ok(())
    }

    /// Non-fatal problems, e.g. a TZF request the array cannot satisfy.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        let (m_h, m_v, u) = (self.array.m_h, self.array.m_v, self.ue_count);
        if self.precoders.contains(&Method::Tzf) && !tzf_feasible(m_h, m_v, u) {
            w.push(format!(
                "TZF is infeasible: min(m_h, m_v) = {} is not greater than ue_count − 1 = {}",
                m_h.min(m_v),
                u - 1
            ));
        }
        if self.precoders.contains(&Method::Zf) && m_h * m_v < u {
            w.push(format!("ZF is infeasible: {} antennas for {u} UEs", m_h * m_v));
        }
        w
    }

    pub fn geometry(&self) -> Result<ArrayGeometry> {
        ArrayGeometry::from_carrier(
            self.array.m_h,
            self.array.m_v,
            self.array.spacing_wavelengths,
            self.array.carrier_hz,
        )
        .map_err(|e| invalid(e.to_string()))
    }

    pub fn k_factor_linear(&self) -> f64 {
        self.k_factor_db.map_or(f64::INFINITY, |db| 10f64.powf(db / 10.0))
    }

    /// Uplink pilot energy with unit noise variance.
    pub fn pilot_power(&self) -> f64 {
        10f64.powf(self.snr_ul_db / 10.0)
    }

    /// Total downlink transmit energy with unit noise variance.
    pub fn transmit_power(&self) -> f64 {
        10f64.powf(self.snr_dl_db / 10.0)
    }

    pub fn pilot_len(&self) -> usize {
        self.pilot_length.unwrap_or(self.ue_count)
    }

    pub fn bs(&self) -> Vec3 {
        Vec3::from(self.bs_position)
    }

    pub fn track_specs(&self) -> Result<Vec<TrackSpec>> {
        let h = self.ue_height_m;
        let [bx, by, _] = self.bs_position;
        let configs: Vec<TrackConfig> = match &self.tracks {
            TracksConfig::Preset(TrackPreset::Circular) => (0..self.ue_count)
                .map(|u| TrackConfig::Circular {
                    center_xy: [bx, by],
                    radius_m: 20.0 + 15.0 * u as f64,
                    initial_phase_deg: 360.0 * u as f64 / self.ue_count as f64,
                    direction: 1.0,
                })
                .collect(),
            TracksConfig::Preset(TrackPreset::Linear) => (0..self.ue_count)
                .map(|u| TrackConfig::Linear { start_xy: [bx + 10.0 + 15.0 * u as f64, by - 40.0], heading_deg: 90.0 })
                .collect(),
            TracksConfig::Custom(t) => t.clone(),
        };
        configs
            .iter()
            .enumerate()
            .map(|(u, t)| {
                let spec = match *t {
                    TrackConfig::Circular { center_xy, radius_m, initial_phase_deg, direction } => TrackSpec::circular(
                        Vec3::new(center_xy[0], center_xy[1], h),
                        radius_m,
                        initial_phase_deg.to_radians(),
                        direction,
                        self.speed_mps,
                    ),
                    TrackConfig::Linear { start_xy, heading_deg } => {
                        let (s, c) = heading_deg.to_radians().sin_cos();
                        TrackSpec::linear(Vec3::new(start_xy[0], start_xy[1], h), Vec3::new(c, s, 0.0), self.speed_mps)
                    }
                };
                spec.map_err(|e| invalid(format!("track {u}: {e}")))
            })
            .collect()
    }

    pub fn channel_params(&self) -> Result<Arc<ChannelParams>> {
        Ok(Arc::new(ChannelParams {
            geometry: self.geometry()?,
            bs_position: self.bs(),
            k_factor: self.k_factor_linear(),
            sigma_elevation: self.angle_spread_deg.elevation.to_radians(),
            sigma_azimuth: self.angle_spread_deg.azimuth.to_radians(),
            tti_len: self.tti_len_s,
            doppler_mode: self.doppler_mode,
            gains: Arc::new(Isotropic),
            nlos_covariance: Covariance::Identity,
        }))
    }

    /// TTIs at which CSI is acquired.
    pub fn uplink_ttis(&self) -> Vec<u64> {
        (0..self.total_ttis).step_by(self.uplink_period_ttis as usize).collect()
    }

    /// SHA-256 of the serialized configuration.
    pub fn fingerprint(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }

    /// Compact JSON with every field spelled out; `parse_config` reads it back unchanged.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("configuration serializes")
    }
}

/// Parses and validates a JSON document; an empty document gives the defaults.
pub fn parse_config(text: &str, origin: &str) -> Result<ScenarioConfig> {
    let cfg: ScenarioConfig = if text.trim().is_empty() {
        ScenarioConfig::default()
    } else {
        serde_json::from_str(text).map_err(|e| invalid(format!("{origin}: {e}")))?
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Reads a configuration from `path`, or from stdin when `path` is `-`.
pub fn load_config(path: &Path) -> Result<ScenarioConfig> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    }
    parse_config(&text, &path.display().to_string())
}
