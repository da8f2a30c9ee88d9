//! Reproducible random streams and circularly-symmetric complex Gaussians.
//!
//! Every stream is a ChaCha8 generator keyed by the experiment seed and
//! selected by a 64-bit stream id, so draws for a given (UE, realization,
//! purpose) are independent of the order in which streams are consumed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::evd::hermitian_evd;
use super::matrix::{CMatrix, CVector};
use crate::error::{Error, Result};

/// Tolerance (relative to the largest eigenvalue) for calling a covariance PSD.
const PSD_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self { seed, stream_id, rng }
    }

    /// Stream id derived from a tuple of labels, e.g. `(purpose, realization, ue)`.
    pub fn keyed(seed: u64, key: &[u64]) -> Self {
        Self::new(seed, stream_key(key))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// One CN(0, 1) sample: real and imaginary parts each N(0, ½).
    pub fn complex_normal(&mut self) -> Complex64 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Complex64::new(self.standard_normal() * s, self.standard_normal() * s)
    }
}

/// SplitMix64 finalizer folded over the key words.
pub fn stream_key(key: &[u64]) -> u64 {
    let mut h: u64 = 0x243f_6a88_85a3_08d3;
    for &k in key {
        h ^= k;
        h = h.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = h;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        h = z ^ (z >> 31);
    }
    h
}

/// Spatial covariance of a complex Gaussian vector.
#[derive(Debug, Clone)]
pub enum Covariance {
    Identity,
    /// Stored as a factor `L` with `L Lᴴ = R`.
    Factored {
        dim: usize,
        factor: CMatrix,
    },
}

impl Covariance {
    /// Factorizes a Hermitian PSD covariance through its eigendecomposition.
    pub fn general(r: &CMatrix) -> Result<Self> {
        let evd = hermitian_evd(r).map_err(|e| match e {
            Error::Argument(m) | Error::Dimension(m) => Error::Decomposition(m),
            other => other,
        })?;
        let lmax = evd.eigenvalues.iter().fold(0.0_f64, |a, &l| a.max(l.abs()));
        if let Some(&neg) = evd.eigenvalues.iter().find(|&&l| l < -PSD_TOL * lmax.max(f64::MIN_POSITIVE)) {
            return Err(Error::Decomposition(format!(
                "covariance is not positive semidefinite (eigenvalue {neg:.3e})"
            )));
        }
        let n = r.rows();
        let v = &evd.eigenvectors;
        let factor = CMatrix::from_fn(n, n, |i, j| v[(i, j)] * evd.eigenvalues[j].max(0.0).sqrt());
        Ok(Covariance::Factored { dim: n, factor })
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            Covariance::Identity => None,
            Covariance::Factored { dim, .. } => Some(*dim),
        }
    }
}

/// Draws an `n`-dimensional ZMCSG vector with the given covariance.
pub fn complex_gaussian(rng: &mut RngStream, n: usize, covariance: &Covariance) -> Result<CVector> {
    let white: CVector = (0..n).map(|_| rng.complex_normal()).collect();
    match covariance {
        Covariance::Identity => Ok(white),
        Covariance::Factored { dim, factor } => {
            if *dim != n {
                return Err(Error::Dimension(format!("covariance is {dim}x{dim}, requested length {n}")));
            }
            factor.matvec(&white)
        }
    }
}
