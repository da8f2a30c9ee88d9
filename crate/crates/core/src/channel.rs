//! Rician flat-fading channel synthesis for a uniform planar array.
//!
//! Element `m` (0-based) of an `M_H x M_V` array sits at horizontal position
//! `m / M_V` and vertical position `m % M_V`, so full-array vectors are
//! `kron(horizontal, vertical)` in memory.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{bessel_j0, complex_gaussian, kron_vec, CVector, Covariance, RngStream};
use crate::mobility::{
    advance_track, mean_angles, perturb_angles, relative_direction, wave_vector, AngleState, DopplerMode, Position3,
    TrackSpec, UeState,
};

/// Speed of light, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayGeometry {
    pub m_h: usize,
    pub m_v: usize,
    /// Element spacing, meters.
    pub d_h: f64,
    pub d_v: f64,
    pub wavelength: f64,
}

impl ArrayGeometry {
    pub fn new(m_h: usize, m_v: usize, d_h: f64, d_v: f64, wavelength: f64) -> Result<Self> {
        if m_h == 0 || m_v == 0 {
            return Err(Error::Argument(format!("array must have at least one element per axis, got {m_h}x{m_v}")));
        }
        for (name, v) in [("d_h", d_h), ("d_v", d_v), ("wavelength", wavelength)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Argument(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self { m_h, m_v, d_h, d_v, wavelength })
    }

    /// Array with spacing given in wavelengths at carrier `carrier_hz`.
    pub fn from_carrier(m_h: usize, m_v: usize, spacing_wavelengths: f64, carrier_hz: f64) -> Result<Self> {
        if !(carrier_hz.is_finite() && carrier_hz > 0.0) {
            return Err(Error::Argument(format!("carrier must be positive, got {carrier_hz}")));
        }
        let wavelength = SPEED_OF_LIGHT / carrier_hz;
        let d = spacing_wavelengths * wavelength;
        Self::new(m_h, m_v, d, d, wavelength)
    }

    pub fn total(&self) -> usize {
        self.m_h * self.m_v
    }

    /// 0-based linear index of element `(h, v)`.
    pub fn element_index(&self, h: usize, v: usize) -> usize {
        v + h * self.m_v
    }
}

/// Per-element power gain as a function of the arrival angles.
pub trait GainModel: fmt::Debug + Send + Sync {
    fn gain(&self, elevation: f64, azimuth: f64, element: usize) -> f64;

    fn is_isotropic(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Isotropic;

impl GainModel for Isotropic {
    fn gain(&self, _: f64, _: f64, _: usize) -> f64 {
        1.0
    }

    fn is_isotropic(&self) -> bool {
        true
    }
}

/// Fixed angle-independent gain per element.
#[derive(Debug, Clone)]
pub struct ElementGains(Vec<f64>);

impl ElementGains {
    pub fn new(gains: Vec<f64>) -> Result<Self> {
        if gains.iter().any(|g| !(g.is_finite() && *g >= 0.0)) {
            return Err(Error::Argument("element gains must be finite and non-negative".into()));
        }
        Ok(Self(gains))
    }
}

impl GainModel for ElementGains {
    fn gain(&self, _: f64, _: f64, element: usize) -> f64 {
        self.0[element]
    }
}

/// Horizontal steering vector `e^{−j(2π/λ) d_H h cosθ cosφ}`.
pub fn steering_horizontal(geom: &ArrayGeometry, elevation: f64, azimuth: f64) -> CVector {
    let step = 2.0 * PI / geom.wavelength * geom.d_h * elevation.cos() * azimuth.cos();
    phase_ramp(geom.m_h, step)
}

/// Vertical steering vector `e^{−j(2π/λ) d_V v sinθ}`.
pub fn steering_vertical(geom: &ArrayGeometry, elevation: f64) -> CVector {
    let step = 2.0 * PI / geom.wavelength * geom.d_v * elevation.sin();
    phase_ramp(geom.m_v, step)
}

fn phase_ramp(n: usize, step: f64) -> CVector {
    (0..n)
        .map(|i| if i == 0 { Complex64::new(1.0, 0.0) } else { Complex64::from_polar(1.0, -step * i as f64) })
        .collect()
}

/// Full-array response with per-element amplitude `√g`.
pub fn steering_full(geom: &ArrayGeometry, elevation: f64, azimuth: f64, gains: &dyn GainModel) -> CVector {
    let a = kron_vec(&steering_horizontal(geom, elevation, azimuth), &steering_vertical(geom, elevation));
    if gains.is_isotropic() {
        return a;
    }
    a.into_iter().enumerate().map(|(m, z)| z * gains.gain(elevation, azimuth, m).sqrt()).collect()
}

/// `e^{jψ}·a`
pub fn los_channel(phase: f64, steering: &[Complex64]) -> CVector {
    let rot = Complex64::from_polar(1.0, phase);
    steering.iter().map(|z| z * rot).collect()
}

/// Gauss–Markov coefficient `J₀(2π (v/λ) T)`.
pub fn temporal_correlation(speed: f64, wavelength: f64, tti_len: f64) -> Result<f64> {
    if !(wavelength > 0.0 && tti_len > 0.0 && speed >= 0.0) {
        return Err(Error::Argument(format!(
            "temporal correlation needs λ > 0, T > 0, v ≥ 0 (got {wavelength}, {tti_len}, {speed})"
        )));
    }
    bessel_j0(2.0 * PI * speed / wavelength * tti_len)
}

/// One AR(1) step `ρ·h + √(1−ρ²)·w`, `w ~ CN(0, R)`.
pub fn nlos_step(state: &[Complex64], rho: f64, covariance: &Covariance, rng: &mut RngStream) -> Result<CVector> {
    if !(rho.abs() <= 1.0) {
        return Err(Error::Argument(format!("|ρ| must be ≤ 1, got {rho}")));
    }
    let innovation = complex_gaussian(rng, state.len(), covariance)?;
    let w = (1.0 - rho * rho).sqrt();
    Ok(state.iter().zip(&innovation).map(|(h, n)| h * rho + n * w).collect())
}

/// `√(K/(K+1))·h_los + √(1/(K+1))·h_nlos`; `K = ∞` gives `h_los`.
pub fn rician_combine(k_factor: f64, los: &[Complex64], nlos: &[Complex64]) -> Result<CVector> {
    if k_factor.is_nan() || k_factor < 0.0 {
        return Err(Error::Argument(format!("K-factor must be ≥ 0, got {k_factor}")));
    }
    if los.len() != nlos.len() {
        return Err(Error::Dimension(format!("LOS length {} vs NLOS length {}", los.len(), nlos.len())));
    }
    let (wl, wn) = if k_factor.is_infinite() {
        (1.0, 0.0)
    } else {
        ((k_factor / (k_factor + 1.0)).sqrt(), (1.0 / (k_factor + 1.0)).sqrt())
    };
    Ok(los.iter().zip(nlos).map(|(l, n)| l * wl + n * wn).collect())
}

/// 0-based element indices of the first horizontal row and first vertical column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubArrayIndexSets {
    pub horizontal: Vec<usize>,
    pub vertical: Vec<usize>,
}

pub fn subarray_index_sets(geom: &ArrayGeometry) -> SubArrayIndexSets {
    SubArrayIndexSets {
        horizontal: (0..geom.m_h).map(|h| geom.element_index(h, 0)).collect(),
        vertical: (0..geom.m_v).collect(),
    }
}

pub fn extract_subarray(h: &[Complex64], idx: &[usize]) -> Result<CVector> {
    idx.iter()
        .map(|&i| {
            h.get(i).copied().ok_or_else(|| Error::Argument(format!("index {i} out of range for length {}", h.len())))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelState {
    pub h: CVector,
    pub h_los: CVector,
    pub h_nlos: CVector,
    /// Linear scale.
    pub k_factor: f64,
}

impl ChannelState {
    pub fn new(k_factor: f64, h_los: CVector, h_nlos: CVector) -> Result<Self> {
        let h = rician_combine(k_factor, &h_los, &h_nlos)?;
        Ok(Self { h, h_los, h_nlos, k_factor })
    }
}

/// Everything that is shared between UEs of one scenario.
#[derive(Debug, Clone)]
pub struct ChannelParams {
    pub geometry: ArrayGeometry,
    pub bs_position: Position3,
    /// Linear scale; may be `f64::INFINITY`.
    pub k_factor: f64,
    /// Standard deviations of the per-TTI angle errors, radians.
    pub sigma_elevation: f64,
    pub sigma_azimuth: f64,
    pub tti_len: f64,
    pub doppler_mode: DopplerMode,
    pub gains: Arc<dyn GainModel>,
    pub nlos_covariance: Covariance,
}

impl ChannelParams {
    /// Mean angles of a UE at `position`.
    pub fn mean_angles_at(&self, position: &Position3) -> Result<(f64, f64)> {
        mean_angles(&relative_direction(&self.bs_position, position)?)
    }
}

/// Time evolution of one UE's channel.
#[derive(Debug, Clone)]
pub struct UeChannel {
    params: Arc<ChannelParams>,
    track: TrackSpec,
    tti: u64,
    ue: UeState,
    channel: ChannelState,
    angle_rng: RngStream,
    nlos_rng: RngStream,
}

impl UeChannel {
    /// State at TTI 0 with a stationary NLOS draw and zero Doppler phase.
    pub fn new(
        params: Arc<ChannelParams>,
        track: TrackSpec,
        angle_rng: RngStream,
        mut nlos_rng: RngStream,
    ) -> Result<Self> {
        track.validate()?;
        let h_nlos = complex_gaussian(&mut nlos_rng, params.geometry.total(), &params.nlos_covariance)?;
        let (position, velocity) = advance_track(&track, 0, params.tti_len);
        let placeholder = AngleState { mean_elevation: 0.0, mean_azimuth: 0.0, elevation: 0.0, azimuth: 0.0 };
        let mut s = Self {
            ue: UeState { position, velocity, angles: placeholder, doppler_phase: 0.0 },
            channel: ChannelState { h: Vec::new(), h_los: Vec::new(), h_nlos, k_factor: params.k_factor },
            params,
            track,
            tti: 0,
            angle_rng,
            nlos_rng,
        };
        s.refresh_los(true)?;
        Ok(s)
    }

    pub fn tti(&self) -> u64 {
        self.tti
    }

    pub fn ue_state(&self) -> &UeState {
        &self.ue
    }

    pub fn state(&self) -> &ChannelState {
        &self.channel
    }

    pub fn h(&self) -> &[Complex64] {
        &self.channel.h
    }

    /// Moves to the next TTI: new position, AR(1) NLOS step, fresh angle errors, Doppler update.
    pub fn advance(&mut self) -> Result<()> {
        self.tti += 1;
        let (position, velocity) = advance_track(&self.track, self.tti, self.params.tti_len);
        self.ue.position = position;
        self.ue.velocity = velocity;
        let rho = temporal_correlation(velocity.norm(), self.params.geometry.wavelength, self.params.tti_len)?;
        self.channel.h_nlos = nlos_step(&self.channel.h_nlos, rho, &self.params.nlos_covariance, &mut self.nlos_rng)?;
        self.refresh_los(false)
    }

    fn refresh_los(&mut self, initial: bool) -> Result<()> {
        let p = &*self.params;
        let (mean_elevation, mean_azimuth) = p.mean_angles_at(&self.ue.position)?;
        let (elevation, azimuth) =
            perturb_angles(mean_elevation, mean_azimuth, p.sigma_elevation, p.sigma_azimuth, &mut self.angle_rng);
        self.ue.angles = AngleState { mean_elevation, mean_azimuth, elevation, azimuth };
        let k = wave_vector(elevation, azimuth, p.geometry.wavelength);
        self.ue.doppler_phase = match (initial, p.doppler_mode) {
            (true, DopplerMode::Accumulate) => 0.0,
            _ => p.doppler_mode.next_phase(&k, &self.ue.velocity, p.tti_len, self.ue.doppler_phase),
        };
        let a = steering_full(&p.geometry, elevation, azimuth, p.gains.as_ref());
        self.channel.h_los = los_channel(self.ue.doppler_phase, &a);
        self.channel.h = rician_combine(p.k_factor, &self.channel.h_los, &self.channel.h_nlos)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dot, norm, CMatrix};
    use crate::mobility::Vec3;

    fn half_wave(m_h: usize, m_v: usize) -> ArrayGeometry {
        ArrayGeometry::new(m_h, m_v, 0.5, 0.5, 1.0).unwrap()
    }

    fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn geometry_from_carrier() {
        let g = ArrayGeometry::from_carrier(16, 16, 0.5, 6e9).unwrap();
        assert!((g.wavelength - 0.049_965_409_666_666_67).abs() < 1e-15);
        assert_eq!(g.d_h, g.wavelength / 2.0);
        assert_eq!(g.total(), 256);
        assert!(ArrayGeometry::new(0, 2, 0.5, 0.5, 1.0).is_err());
        assert!(ArrayGeometry::new(2, 2, 0.5, 0.5, -1.0).is_err());
    }

    #[test]
    fn horizontal_steering_examples() {
        let g = half_wave(4, 1);
        assert!(close(&steering_horizontal(&g, 0.0, PI / 2.0), &[c(1.0, 0.0); 4], 1e-15));
        let g = half_wave(2, 1);
        assert!(close(&steering_horizontal(&g, 0.0, 0.0), &[c(1.0, 0.0), c(-1.0, 0.0)], 1e-15));
        let a = steering_horizontal(&half_wave(9, 1), 0.3, -1.1);
        assert_eq!(a[0], c(1.0, 0.0));
        assert!(a.iter().all(|z| (z.norm() - 1.0).abs() < 1e-15));
    }

    #[test]
    fn vertical_steering_examples() {
        let g = half_wave(1, 5);
        assert!(close(&steering_vertical(&g, 0.0), &[c(1.0, 0.0); 5], 0.0));
        let g = half_wave(1, 2);
        assert!(close(&steering_vertical(&g, PI / 2.0), &[c(1.0, 0.0), c(-1.0, 0.0)], 1e-15));
    }

    #[test]
    fn full_steering_examples() {
        let g = half_wave(2, 2);
        let a = steering_full(&g, PI / 2.0, 0.4, &Isotropic);
        assert!(close(&a, &[c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)], 1e-15));
        let g = half_wave(3, 4);
        let (e, az) = (0.2, 0.9);
        let a = steering_full(&g, e, az, &Isotropic);
        assert_eq!(a, kron_vec(&steering_horizontal(&g, e, az), &steering_vertical(&g, e)));
        let gains = ElementGains::new((1..=12).map(|m| m as f64).collect()).unwrap();
        let b = steering_full(&g, e, az, &gains);
        for (m, (x, y)) in a.iter().zip(&b).enumerate() {
            assert!((y - x * ((m + 1) as f64).sqrt()).norm() < 1e-14);
        }
        assert!((norm(&b).powi(2) - 78.0).abs() < 1e-12);
        assert!((norm(&a).powi(2) - 12.0).abs() < 1e-12);
    }

    #[test]
    fn los_phasor() {
        let a = steering_full(&half_wave(2, 3), 0.1, 0.2, &Isotropic);
        assert_eq!(los_channel(0.0, &a), a);
        let neg: CVector = a.iter().map(|z| -z).collect();
        assert!(close(&los_channel(PI, &a), &neg, 1e-15));
        assert!((norm(&los_channel(1.234, &a)) - norm(&a)).abs() < 1e-14);
    }

    #[test]
    fn correlation_examples() {
        assert_eq!(temporal_correlation(0.0, 0.05, 1e-3).unwrap(), 1.0);
        let rho = temporal_correlation(30.0, 0.05, 1e-3).unwrap();
        assert!((rho + 0.40).abs() < 5e-3);
        assert!(temporal_correlation(1.0, 0.0, 1e-3).is_err());
    }

    #[test]
    fn nlos_step_extremes() {
        let mut rng = RngStream::new(1, 0);
        let h = vec![c(1.0, 2.0), c(-0.5, 0.1)];
        assert_eq!(nlos_step(&h, 1.0, &Covariance::Identity, &mut rng).unwrap(), h);
        let fresh = nlos_step(&h, 0.0, &Covariance::Identity, &mut RngStream::new(2, 0)).unwrap();
        let direct = complex_gaussian(&mut RngStream::new(2, 0), 2, &Covariance::Identity).unwrap();
        assert_eq!(fresh, direct);
        assert!(nlos_step(&h, 1.01, &Covariance::Identity, &mut rng).is_err());
    }

    #[test]
    fn ar1_statistics() {
        let mut rng = RngStream::new(3, 0);
        let n = 100_000;
        let mut x = complex_gaussian(&mut rng, 1, &Covariance::Identity).unwrap();
        let mut series = Vec::with_capacity(n);
        for _ in 0..n {
            x = nlos_step(&x, 0.5, &Covariance::Identity, &mut rng).unwrap();
            series.push(x[0]);
        }
        let var = series.iter().map(|z| z.norm_sqr()).sum::<f64>() / n as f64;
        let lag1 = series.windows(2).map(|w| (w[1] * w[0].conj()).re).sum::<f64>() / (n - 1) as f64 / var;
        assert!((var - 1.0).abs() < 0.05, "{var}");
        assert!((lag1 - 0.5).abs() < 0.02, "{lag1}");
    }

    #[test]
    fn rician_examples() {
        let los = vec![c(1.0, 0.0), c(0.0, 1.0)];
        let nlos = vec![c(0.3, -0.2), c(0.5, 0.5)];
        assert_eq!(rician_combine(0.0, &los, &nlos).unwrap(), nlos);
        let h = rician_combine(1e12, &los, &nlos).unwrap();
        assert!(norm(&crate::linalg::sub(&h, &los)) / norm(&los) < 1e-5);
        let h = rician_combine(1.0, &los, &nlos).unwrap();
        let w = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(&h, &[(los[0] + nlos[0]) * w, (los[1] + nlos[1]) * w], 1e-15));
        assert!(rician_combine(-1.0, &los, &nlos).is_err());
        assert!(rician_combine(1.0, &los, &nlos[..1]).is_err());
        assert_eq!(rician_combine(f64::INFINITY, &los, &nlos).unwrap(), los);
    }

    #[test]
    fn index_set_examples() {
        let s = subarray_index_sets(&half_wave(3, 2));
        assert_eq!(s.horizontal, vec![0, 2, 4]);
        assert_eq!(s.vertical, vec![0, 1]);
        assert_eq!(subarray_index_sets(&half_wave(1, 4)).horizontal, vec![0]);
        let s = subarray_index_sets(&half_wave(5, 1));
        assert_eq!(s.horizontal, vec![0, 1, 2, 3, 4]);
        assert_eq!(s.vertical, vec![0]);
    }

    #[test]
    fn subarrays_of_pure_los() {
        let g = half_wave(4, 3);
        let (e, az, psi) = (-0.4, 0.7, 2.1);
        let h = los_channel(psi, &steering_full(&g, e, az, &Isotropic));
        let s = subarray_index_sets(&g);
        let rot = Complex64::from_polar(1.0, psi);
        let expect_h: CVector = steering_horizontal(&g, e, az).iter().map(|z| z * rot).collect();
        let expect_v: CVector = steering_vertical(&g, e).iter().map(|z| z * rot).collect();
        assert!(close(&extract_subarray(&h, &s.horizontal).unwrap(), &expect_h, 1e-15));
        assert!(close(&extract_subarray(&h, &s.vertical).unwrap(), &expect_v, 1e-15));
        assert_eq!(extract_subarray(&h, &[0]).unwrap(), vec![h[0]]);
        assert!(extract_subarray(&h, &[12]).is_err());
    }

    fn params(k_factor: f64, sigma: f64) -> Arc<ChannelParams> {
        Arc::new(ChannelParams {
            geometry: ArrayGeometry::from_carrier(4, 4, 0.5, 6e9).unwrap(),
            bs_position: Vec3::new(0.0, 0.0, 25.0),
            k_factor,
            sigma_elevation: sigma,
            sigma_azimuth: sigma,
            tti_len: 1e-3,
            doppler_mode: DopplerMode::Accumulate,
            gains: Arc::new(Isotropic),
            nlos_covariance: Covariance::Identity,
        })
    }

    #[test]
    fn ue_channel_recombination_identity() {
        let track = TrackSpec::linear(Vec3::new(10.0, -40.0, 1.5), Vec3::new(0.0, 1.0, 0.0), 30.0).unwrap();
        let mut ue = UeChannel::new(params(100.0, 0.01), track, RngStream::new(1, 1), RngStream::new(1, 2)).unwrap();
        for _ in 0..50 {
            ue.advance().unwrap();
            let s = ue.state();
            let again = rician_combine(s.k_factor, &s.h_los, &s.h_nlos).unwrap();
            assert!(close(&s.h, &again, 1e-12));
            assert!((ue.ue_state().velocity.norm() - 30.0).abs() < 1e-9);
        }
        assert_eq!(ue.tti(), 50);
    }

    #[test]
    fn ue_channel_is_reproducible() {
        let track = TrackSpec::circular(Vec3::new(0.0, 0.0, 1.5), 30.0, 0.3, 1.0, 30.0).unwrap();
        let run = || {
            let mut ue = UeChannel::new(params(1.0, 0.02), track, RngStream::new(9, 1), RngStream::new(9, 2)).unwrap();
            for _ in 0..20 {
                ue.advance().unwrap();
            }
            ue.h().to_vec()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn static_pure_los_ue_is_frozen() {
        let track = TrackSpec::linear(Vec3::new(10.0, 5.0, 1.5), Vec3::new(1.0, 0.0, 0.0), 0.0).unwrap();
        let mut ue =
            UeChannel::new(params(f64::INFINITY, 0.0), track, RngStream::new(1, 1), RngStream::new(1, 2)).unwrap();
        let h0 = ue.h().to_vec();
        for _ in 0..10 {
            ue.advance().unwrap();
        }
        assert!(close(ue.h(), &h0, 1e-15));
    }

    #[test]
    fn separability_of_los_and_not_of_rayleigh() {
        let g = half_wave(4, 4);
        let s = subarray_index_sets(&g);
        let chordal = |h: &CVector| {
            let hh = extract_subarray(h, &s.horizontal).unwrap();
            let hv = extract_subarray(h, &s.vertical).unwrap();
            let k = kron_vec(&hh, &hv);
            1.0 - dot(h, &k).norm_sqr() / (norm(h).powi(2) * norm(&k).powi(2))
        };
        let mut rng = RngStream::new(4, 4);
        for _ in 0..20 {
            let los = steering_full(&g, rng.uniform() - 0.5, 3.0 * rng.uniform(), &Isotropic);
            let nlos = complex_gaussian(&mut rng, 16, &Covariance::Identity).unwrap();
            assert!(chordal(&rician_combine(1e12, &los, &nlos).unwrap()) < 1e-6);
        }
        let mut above = 0;
        for _ in 0..200 {
            let nlos = complex_gaussian(&mut rng, 16, &Covariance::Identity).unwrap();
            if chordal(&rician_combine(0.0, &nlos, &nlos).unwrap()) > 0.1 {
                above += 1;
            }
        }
        assert!(above >= 198, "{above}");
    }

    #[test]
    fn gauss_markov_preserves_covariance() {
        let r = CMatrix::new(2, 2, vec![c(1.0, 0.0), c(0.4, 0.3), c(0.4, -0.3), c(0.8, 0.0)]).unwrap();
        let cov = Covariance::general(&r).unwrap();
        let mut rng = RngStream::new(12, 0);
        let n = 40_000;
        let mut acc = CMatrix::zeros(2, 2);
        let mut h = complex_gaussian(&mut rng, 2, &cov).unwrap();
        for _ in 0..n {
            h = nlos_step(&h, 0.7, &cov, &mut rng).unwrap();
            acc.add_outer(&h, 1.0 / n as f64);
        }
        assert!(acc.sub(&r).unwrap().frobenius_norm() < 0.06);
    }
}
