//! Uplink pilots and least-squares channel estimation.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::channel::SubArrayIndexSets;
use crate::error::{Error, Result};
use crate::linalg::{dot_unconj, CMatrix, CVector, RngStream, ZERO};

/// Orthogonal pilot sequences; row `u` holds `p_uᴴ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PilotMatrix {
    sequences: CMatrix,
}

impl PilotMatrix {
    pub fn ue_count(&self) -> usize {
        self.sequences.rows()
    }

    pub fn length(&self) -> usize {
        self.sequences.cols()
    }

    pub fn sequences(&self) -> &CMatrix {
        &self.sequences
    }

    /// `p_u` (the conjugate of row `u`).
    pub fn pilot(&self, u: usize) -> CVector {
        self.sequences.row(u).iter().map(|z| z.conj()).collect()
    }
}

/// First `u_count` rows of the `l`-point DFT matrix.
pub fn generate_pilots(u_count: usize, l: usize) -> Result<PilotMatrix> {
    if u_count == 0 || l < u_count {
        return Err(Error::Config(format!("pilot length {l} must be at least the UE count {u_count} (≥ 1)")));
    }
    let sequences = CMatrix::from_fn(u_count, l, |u, k| {
        // Reduce the exponent first so phases stay exact for large u·k.
        let r = (u * k) % l;
        if r == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::from_polar(1.0, -2.0 * PI * r as f64 / l as f64)
        }
    });
    Ok(PilotMatrix { sequences })
}

/// `X = √E_P Σ_u h_u p_uᴴ + B`, `B` i.i.d. `CN(0, σ²)`.
pub fn uplink_receive(
    channels: &[CVector],
    pilots: &PilotMatrix,
    e_p: f64,
    noise_var: f64,
    rng: &mut RngStream,
) -> Result<CMatrix> {
    if channels.len() != pilots.ue_count() {
        return Err(Error::Dimension(format!("{} channels for {} pilots", channels.len(), pilots.ue_count())));
    }
    if !(e_p >= 0.0 && noise_var >= 0.0) {
        return Err(Error::Argument(format!("pilot power and noise variance must be ≥ 0 (got {e_p}, {noise_var})")));
    }
    let m = channels.first().map_or(0, Vec::len);
    if m == 0 || channels.iter().any(|h| h.len() != m) {
        return Err(Error::Dimension("channels must be non-empty and of equal length".into()));
    }
    let l = pilots.length();
    let amp = e_p.sqrt();
    let sigma = noise_var.sqrt();
    let p = pilots.sequences();
    let mut x =
        CMatrix::from_fn(m, l, |r, k| (0..channels.len()).fold(ZERO, |acc, u| acc + channels[u][r] * p[(u, k)]) * amp);
    for z in x.as_mut_slice() {
        *z += rng.complex_normal() * sigma;
    }
    Ok(x)
}

/// Row access to an observation matrix.
pub trait RowSource {
    fn row_count(&self) -> usize;
    fn row(&self, i: usize) -> &[Complex64];
}

impl RowSource for CMatrix {
    fn row_count(&self) -> usize {
        self.rows()
    }

    fn row(&self, i: usize) -> &[Complex64] {
        CMatrix::row(self, i)
    }
}

/// Records which rows of the wrapped source were read.
#[derive(Debug)]
pub struct CountingRows<'a, S: RowSource> {
    inner: &'a S,
    touched: RefCell<BTreeSet<usize>>,
}

impl<'a, S: RowSource> CountingRows<'a, S> {
    pub fn new(inner: &'a S) -> Self {
        Self { inner, touched: RefCell::new(BTreeSet::new()) }
    }

    pub fn distinct_rows_read(&self) -> usize {
        self.touched.borrow().len()
    }
}

impl<S: RowSource> RowSource for CountingRows<'_, S> {
    fn row_count(&self) -> usize {
        self.inner.row_count()
    }

    fn row(&self, i: usize) -> &[Complex64] {
        self.touched.borrow_mut().insert(i);
        self.inner.row(i)
    }
}

fn ls_rows<S: RowSource + ?Sized>(
    x: &S,
    rows: impl Iterator<Item = usize>,
    pilot: &[Complex64],
    e_p: f64,
) -> Result<CVector> {
    if !(e_p > 0.0) {
        return Err(Error::Argument(format!("pilot power must be positive, got {e_p}")));
    }
    let l = pilot.len();
    let scale = 1.0 / (l as f64 * e_p.sqrt());
    rows.map(|i| {
        if i >= x.row_count() {
            return Err(Error::Argument(format!("row {i} out of range ({} rows)", x.row_count())));
        }
        let row = x.row(i);
        if row.len() != l {
            return Err(Error::Dimension(format!("observation has {} columns, pilot length {l}", row.len())));
        }
        Ok(dot_unconj(row, pilot) * scale)
    })
    .collect()
}

/// `ĥ = X p / (L √E_P)`.
pub fn ls_estimate<S: RowSource + ?Sized>(x: &S, pilot: &[Complex64], e_p: f64) -> Result<CVector> {
    ls_rows(x, 0..x.row_count(), pilot, e_p)
}

/// LS estimates of the two sub-array channels, reading only their rows of `x`.
pub fn ls_estimate_subarrays<S: RowSource + ?Sized>(
    x: &S,
    idx: &SubArrayIndexSets,
    pilot: &[Complex64],
    e_p: f64,
) -> Result<(CVector, CVector)> {
    let h = ls_rows(x, idx.horizontal.iter().copied(), pilot, e_p)?;
    let v = ls_rows(x, idx.vertical.iter().copied(), pilot, e_p)?;
    Ok((h, v))
}

#[derive(Debug, Clone, PartialEq)]
pub enum CsiData {
    Full(CVector),
    SubArray { horizontal: CVector, vertical: CVector },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsiEstimate {
    pub acquired_tti: u64,
    pub data: CsiData,
}

impl CsiEstimate {
    pub fn full(&self) -> Option<&[Complex64]> {
        match &self.data {
            CsiData::Full(h) => Some(h),
            CsiData::SubArray { .. } => None,
        }
    }

    pub fn subarrays(&self) -> Option<(&[Complex64], &[Complex64])> {
        match &self.data {
            CsiData::SubArray { horizontal, vertical } => Some((horizontal, vertical)),
            CsiData::Full(_) => None,
        }
    }
}
