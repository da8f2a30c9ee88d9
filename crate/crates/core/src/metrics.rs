//! SINR, sum-rate, subspace distances and runtime statistics.

use std::hint::black_box;
use std::time::Instant;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{dot, norm, CMatrix, CVector};

const UNIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinrEntry {
    pub desired: f64,
    pub interference: f64,
    pub noise: f64,
    pub sinr: f64,
}

impl SinrEntry {
    fn new(desired: f64, interference: f64, noise: f64) -> Self {
        let denom = interference + noise;
        let sinr = if desired == 0.0 { 0.0 } else { desired / denom };
        Self { desired, interference, noise, sinr }
    }
}

/// SINR of every UE.
#[derive(Debug, Clone, PartialEq)]
pub struct SinrReport {
    pub entries: Vec<SinrEntry>,
}

impl SinrReport {
    pub fn sinrs(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.sinr).collect()
    }

    pub fn sum_rate(&self) -> f64 {
        self.entries.iter().map(|e| (1.0 + e.sinr).log2()).sum()
    }
}

/// `|h_uᴴ f_u|² / (Σ_{j≠u} |h_uᴴ f_j|² + σ²)` for UE `u`.
pub fn sinr<F: AsRef<[Complex64]>>(
    channels: &[CVector],
    precoders: &[F],
    noise_var: f64,
    u: usize,
) -> Result<SinrEntry> {
    if channels.len() != precoders.len() {
        return Err(Error::Dimension(format!("{} channels, {} precoders", channels.len(), precoders.len())));
    }
    if u >= channels.len() {
        return Err(Error::Argument(format!("UE {u} out of range")));
    }
    if !(noise_var >= 0.0) {
        return Err(Error::Argument(format!("noise variance must be ≥ 0, got {noise_var}")));
    }
    let h = &channels[u];
    let mut desired = 0.0;
    let mut interference = 0.0;
    for (j, f) in precoders.iter().enumerate() {
        let f = f.as_ref();
        if f.len() != h.len() {
            return Err(Error::Dimension(format!("precoder {j} has length {}, channel {}", f.len(), h.len())));
        }
        let g = dot(h, f).norm_sqr();
        if j == u {
            desired = g;
        } else {
            interference += g;
        }
    }
    Ok(SinrEntry::new(desired, interference, noise_var))
}

pub fn sinr_report<F: AsRef<[Complex64]>>(channels: &[CVector], precoders: &[F], noise_var: f64) -> Result<SinrReport> {
    let entries = (0..channels.len()).map(|u| sinr(channels, precoders, noise_var, u)).collect::<Result<_>>()?;
    Ok(SinrReport { entries })
}

/// `Σ log₂(1 + SINR)`, bits/s/Hz.
pub fn sum_rate(sinrs: &[f64]) -> Result<f64> {
    if let Some(bad) = sinrs.iter().find(|s| !(**s >= 0.0)) {
        return Err(Error::Argument(format!("SINR must be ≥ 0, got {bad}")));
    }
    Ok(sinrs.iter().map(|s| (1.0 + s).log2()).sum())
}

/// `1 − |uᴴv|²` for unit vectors.
pub fn chordal_distance_sq(u: &[Complex64], v: &[Complex64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::Dimension(format!("lengths {} and {}", u.len(), v.len())));
    }
    for w in [u, v] {
        if (norm(w) - 1.0).abs() > UNIT_TOL {
            return Err(Error::Argument(format!("chordal distance needs unit vectors, got norm {}", norm(w))));
        }
    }
    Ok((1.0 - dot(u, v).norm_sqr()).clamp(0.0, 1.0))
}

/// `1 − ‖AᴴB‖_F² / k` for two `n x k` matrices with orthonormal columns.
///
/// Normalized to `[0, 1]`; equals [`chordal_distance_sq`] when `k = 1`.
pub fn subspace_distance_sq(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::Dimension(format!("shapes {}x{} and {}x{}", a.rows(), a.cols(), b.rows(), b.cols())));
    }
    let k = a.cols();
    for m in [a, b] {
        let defect = m.adjoint().matmul(m)?.sub(&CMatrix::identity(k))?.frobenius_norm();
        if defect > UNIT_TOL {
            return Err(Error::Argument(format!("subspace distance needs orthonormal columns (defect {defect:.2e})")));
        }
    }
    let overlap = a.adjoint().matmul(b)?.frobenius_norm().powi(2);
    Ok((1.0 - overlap / k as f64).clamp(0.0, 1.0))
}

/// `(1/N) Σ h hᴴ`
pub fn sample_covariance(realizations: &[CVector]) -> Result<CMatrix> {
    let first = realizations.first().ok_or_else(|| Error::Argument("no realizations".into()))?;
    let n = first.len();
    if n == 0 || realizations.iter().any(|h| h.len() != n) {
        return Err(Error::Dimension("realizations must be non-empty and of equal length".into()));
    }
    let mut acc = CMatrix::zeros(n, n);
    let w = 1.0 / realizations.len() as f64;
    for h in realizations {
        acc.add_outer(h, w);
    }
    Ok(acc)
}

/// Sorted wall-clock samples of one procedure.
#[derive(Debug, Clone, PartialEq)]
pub struct RuntimeEcdf {
    pub label: String,
    samples: Vec<f64>,
}

impl RuntimeEcdf {
    pub fn from_samples(label: impl Into<String>, mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() || samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::Argument("runtime samples must be non-empty and finite".into()));
        }
        samples.sort_by(f64::total_cmp);
        Ok(Self { label: label.into(), samples })
    }

    /// Ascending, seconds.
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Linear interpolation between order statistics; `q` clamped to [0, 1].
    pub fn quantile(&self, q: f64) -> f64 {
        let q = q.clamp(0.0, 1.0);
        let pos = q * (self.samples.len() - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = pos.ceil() as usize;
        let t = pos - lo as f64;
        self.samples[lo] + (self.samples[hi] - self.samples[lo]) * t
    }

    pub fn median(&self) -> f64 {
        self.quantile(0.5)
    }

    /// Fraction of samples `≤ x`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.samples.partition_point(|&s| s <= x) as f64 / self.samples.len() as f64
    }
}

/// Times `repetitions` calls of `procedure` after `max(1, repetitions/10)` discarded warm-up calls.
pub fn measure_runtime<T>(label: &str, repetitions: usize, mut procedure: impl FnMut() -> T) -> Result<RuntimeEcdf> {
    if repetitions == 0 {
        return Err(Error::Argument("at least one repetition is required".into()));
    }
    for _ in 0..(repetitions / 10).max(1) {
        black_box(procedure());
    }
    let samples = (0..repetitions)
        .map(|_| {
            let t = Instant::now();
            black_box(procedure());
            t.elapsed().as_secs_f64()
        })
        .collect();
    RuntimeEcdf::from_samples(label, samples)
}
