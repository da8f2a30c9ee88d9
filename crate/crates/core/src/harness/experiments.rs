//! The three experiments: subspace drift, TDD sum-rate, precoder runtime.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::config::{CsiMode, ScenarioConfig, TzfUpdatePolicy};
use crate::channel::{
    extract_subarray, los_channel, rician_combine, steering_full, subarray_index_sets, ArrayGeometry, ChannelParams,
    SubArrayIndexSets, UeChannel,
};
use crate::csi::{generate_pilots, ls_estimate, ls_estimate_subarrays, uplink_receive};
use crate::error::{Error, Result};
use crate::linalg::{complex_gaussian, dominant_eigenvectors, CMatrix, CVector, Covariance, RngStream};
use crate::metrics::{measure_runtime, sinr_report, subspace_distance_sq, RuntimeEcdf};
use crate::mobility::{advance_track, perturb_angles, wave_vector, DopplerMode, TrackSpec};
use crate::precoding::{
    allocate_power, interference_matrix, interference_projector, mrt, tmrt, tzf, tzf_feasible, tzf_with_projectors, zf,
    Method, Precoder, PrecoderSet, ProjectorPair,
};

// Stream purposes; every random draw is keyed by (purpose, indices…).
const SUBSPACE_ANGLES: u64 = 1;
const SUBSPACE_NLOS: u64 = 2;
const SUMRATE_ANGLES: u64 = 3;
const SUMRATE_NLOS: u64 = 4;
const SUMRATE_UPLINK: u64 = 5;
const RUNTIME_DRAWS: u64 = 6;

/// Noise variance; all powers are SNRs relative to it.
const NOISE_VAR: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Subspace,
    Sumrate,
    Runtime,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Subspace => "subspace",
            ExperimentKind::Sumrate => "sumrate",
            ExperimentKind::Runtime => "runtime",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubspaceRecord {
    pub tti: u64,
    pub label: String,
    pub chordal_sq: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumrateRecord {
    pub tti: u64,
    pub method: String,
    pub sum_rate_bps_hz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuntimeRecord {
    pub method: String,
    pub sample_idx: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Records {
    Subspace(Vec<SubspaceRecord>),
    Sumrate(Vec<SumrateRecord>),
    Runtime(Vec<RuntimeRecord>),
}

impl Records {
    pub fn len(&self) -> usize {
        match self {
            Records::Subspace(r) => r.len(),
            Records::Sumrate(r) => r.len(),
            Records::Runtime(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubspaceSummary {
    pub label: String,
    pub max_chordal_sq: f64,
    pub final_chordal_sq: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumrateSummary {
    pub method: String,
    /// Time- and realization-averaged sum-rate, bits/s/Hz.
    pub mean_bps_hz: f64,
    /// Half-width of the 95% interval over per-realization time averages.
    pub ci95_bps_hz: f64,
    pub realizations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuntimeSummary {
    pub method: String,
    pub samples: usize,
    pub min_s: f64,
    pub q25_s: f64,
    pub median_s: f64,
    pub q75_s: f64,
    pub max_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Summary {
    Subspace { labels: Vec<SubspaceSummary> },
    Sumrate { methods: Vec<SumrateSummary> },
    Runtime { methods: Vec<RuntimeSummary>, draw_digest: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub kind: ExperimentKind,
    pub seed: u64,
    pub fingerprint: String,
    pub config: ScenarioConfig,
    /// Methods skipped and similar non-fatal events.
    pub notes: Vec<String>,
    pub summary: Summary,
    pub records: Records,
}

impl ExperimentResult {
    fn new(
        kind: ExperimentKind,
        config: &ScenarioConfig,
        notes: Vec<String>,
        summary: Summary,
        records: Records,
    ) -> Self {
        Self {
            kind,
            seed: config.seed,
            fingerprint: config.fingerprint(),
            config: config.clone(),
            notes,
            summary,
            records,
        }
    }

    pub fn subspace_summary(&self, label: &str) -> Option<&SubspaceSummary> {
        match &self.summary {
            Summary::Subspace { labels } => labels.iter().find(|s| s.label == label),
            _ => None,
        }
    }

    pub fn sumrate_summary(&self, method: &str) -> Option<&SumrateSummary> {
        match &self.summary {
            Summary::Sumrate { methods } => methods.iter().find(|s| s.method == method),
            _ => None,
        }
    }

    pub fn runtime_summary(&self, method: &str) -> Option<&RuntimeSummary> {
        match &self.summary {
            Summary::Runtime { methods, .. } => methods.iter().find(|s| s.method == method),
            _ => None,
        }
    }
}

/// `(1/N) Σ_k v_k v_kᴴ`, exactly Hermitian and independent of thread count.
fn mean_outer(vectors: &[&[Complex64]]) -> Result<CMatrix> {
    let n = vectors.first().map_or(0, |v| v.len());
    if n == 0 || vectors.iter().any(|v| v.len() != n) {
        return Err(Error::Dimension("mean_outer needs equal-length, non-empty vectors".into()));
    }
    // Row r of `t` holds element r of every vector, so entries are contiguous dot products.
    let t: Vec<CVector> = (0..n).map(|r| vectors.iter().map(|v| v[r]).collect()).collect();
    let w = 1.0 / vectors.len() as f64;
    let data: Vec<Complex64> = (0..n)
        .into_par_iter()
        .flat_map_iter(|r| {
            let t = &t;
            (0..n).map(move |c| {
                t[r].iter().zip(&t[c]).fold(Complex64::new(0.0, 0.0), |acc, (a, b)| acc + a * b.conj()) * w
            })
        })
        .collect();
    CMatrix::new(n, n, data)
}

/// Doppler phase along the mean (unperturbed) geometry at every TTI up to `last`.
fn mean_doppler_phases(params: &ChannelParams, track: &TrackSpec, last: u64) -> Result<Vec<f64>> {
    let mut phases = Vec::with_capacity(last as usize + 1);
    let mut psi = 0.0;
    for n in 0..=last {
        let (pos, vel) = advance_track(track, n, params.tti_len);
        let (e, a) = params.mean_angles_at(&pos)?;
        let k = wave_vector(e, a, params.geometry.wavelength);
        if n > 0 || params.doppler_mode != DopplerMode::Accumulate {
            psi = params.doppler_mode.next_phase(&k, &vel, params.tti_len, psi);
        }
        phases.push(psi);
    }
    Ok(phases)
}

/// Full, horizontal and vertical channel of every UE for one independent draw.
fn subspace_draw(
    params: &ChannelParams,
    idx: &SubArrayIndexSets,
    means: &[(f64, f64)],
    phases: &[f64],
    seed: u64,
    tti: u64,
    realization: u64,
) -> Result<Vec<[CVector; 3]>> {
    let m = params.geometry.total();
    (0..means.len())
        .map(|u| {
            let key = [tti, realization, u as u64];
            let mut arng = RngStream::keyed(seed, &[SUBSPACE_ANGLES, key[0], key[1], key[2]]);
            let mut nrng = RngStream::keyed(seed, &[SUBSPACE_NLOS, key[0], key[1], key[2]]);
            let (e, a) =
                perturb_angles(means[u].0, means[u].1, params.sigma_elevation, params.sigma_azimuth, &mut arng);
            let los = los_channel(phases[u], &steering_full(&params.geometry, e, a, params.gains.as_ref()));
            let nlos = complex_gaussian(&mut nrng, m, &params.nlos_covariance)?;
            let h = rician_combine(params.k_factor, &los, &nlos)?;
            let hh = extract_subarray(&h, &idx.horizontal)?;
            let hv = extract_subarray(&h, &idx.vertical)?;
            Ok([h, hh, hv])
        })
        .collect()
}

const SUBSPACE_LABELS: [&str; 6] = ["full", "horizontal", "vertical", "int_full", "int_horizontal", "int_vertical"];

/// Drift, relative to the first TTI, of the dominant eigenvector of UE 0's channel
/// correlations and of the dominant `U − 1`-dimensional eigenspace (the interference
/// column space) of the Grams of the channels interfering with UE 0.
pub fn run_subspace(config: &ScenarioConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let params = config.channel_params()?;
    let tracks = config.track_specs()?;
    let idx = subarray_index_sets(&params.geometry);
    let ttis: Vec<u64> = (0..config.total_ttis).step_by(config.subspace_stride as usize).collect();
    let last = *ttis.last().expect("total_ttis ≥ 1");
    let phases: Vec<Vec<f64>> = tracks.iter().map(|t| mean_doppler_phases(&params, t, last)).collect::<Result<_>>()?;
    let labels = if config.ue_count > 1 { &SUBSPACE_LABELS[..] } else { &SUBSPACE_LABELS[..3] };

    let mut reference: Vec<CMatrix> = Vec::new();
    let mut records = Vec::with_capacity(ttis.len() * labels.len());
    for &tti in &ttis {
        let means: Vec<(f64, f64)> = tracks
            .iter()
            .map(|t| params.mean_angles_at(&advance_track(t, tti, params.tti_len).0))
            .collect::<Result<_>>()?;
        let psi: Vec<f64> = phases.iter().map(|p| p[tti as usize]).collect();
        let draws: Vec<Vec<[CVector; 3]>> = (0..config.realizations as u64)
            .into_par_iter()
            .map(|r| subspace_draw(&params, &idx, &means, &psi, config.seed, tti, r))
            .collect::<Result<_>>()?;

        let mut dirs = Vec::with_capacity(labels.len());
        for part in 0..3 {
            let own: Vec<&[Complex64]> = draws.iter().map(|d| d[0][part].as_slice()).collect();
            dirs.push(dominant_eigenvectors(&mean_outer(&own)?, 1)?);
        }
        if config.ue_count > 1 {
            for part in 0..3 {
                let others: Vec<&[Complex64]> =
                    draws.iter().flat_map(|d| d[1..].iter().map(move |x| x[part].as_slice())).collect();
                dirs.push(dominant_eigenvectors(&mean_outer(&others)?, config.ue_count - 1)?);
            }
        }
        if reference.is_empty() {
            reference = dirs.clone();
        }
        for (i, label) in labels.iter().enumerate() {
            records.push(SubspaceRecord {
                tti,
                label: label.to_string(),
                chordal_sq: subspace_distance_sq(&reference[i], &dirs[i])?,
            });
        }
    }

    let summary = labels
        .iter()
        .map(|&label| {
            let values: Vec<f64> = records.iter().filter(|r| r.label == label).map(|r| r.chordal_sq).collect();
            SubspaceSummary {
                label: label.to_string(),
                max_chordal_sq: values.iter().copied().fold(0.0, f64::max),
                final_chordal_sq: *values.last().unwrap_or(&0.0),
            }
        })
        .collect();
    Ok(ExperimentResult::new(
        ExperimentKind::Subspace,
        config,
        Vec::new(),
        Summary::Subspace { labels: summary },
        Records::Subspace(records),
    ))
}

/// One curve of the sum-rate experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Variant {
    pub label: String,
    pub method: Method,
    /// Tensor methods only: vertical factor fixed after the first uplink slot.
    pub vertical_once: bool,
}

/// Curves requested by the configuration, minus infeasible ones (reported in the notes).
pub fn sumrate_variants(config: &ScenarioConfig) -> (Vec<Variant>, Vec<String>) {
    let mut out = Vec::new();
    let mut notes = Vec::new();
    let (m_h, m_v, u) = (config.array.m_h, config.array.m_v, config.ue_count);
    for &method in &config.precoders {
        let feasible = match method {
            Method::Zf => m_h * m_v >= u,
            Method::Tzf => tzf_feasible(m_h, m_v, u),
            _ => true,
        };
        if !feasible {
            notes.push(format!("{method} skipped: infeasible for a {m_h}x{m_v} array serving {u} UEs"));
            continue;
        }
        let plain = Variant { label: method.label().to_string(), method, vertical_once: false };
        let once = Variant { label: format!("{}-VONCE", method.label()), method, vertical_once: true };
        if !method.is_tensor() {
            out.push(plain);
            continue;
        }
        match config.tzf_update_policy {
            TzfUpdatePolicy::Both => out.push(plain),
            TzfUpdatePolicy::VerticalOnce => out.push(once),
            TzfUpdatePolicy::Compare => {
                out.push(plain);
                out.push(once);
            }
        }
    }
    (out, notes)
}

/// Vertical-factor state captured at the first uplink slot.
struct VerticalMemory {
    estimates: Vec<CVector>,
    projectors: Vec<Option<CMatrix>>,
}

struct Designer<'a> {
    config: &'a ScenarioConfig,
    idx: SubArrayIndexSets,
    budgets: Vec<f64>,
    memory: Option<VerticalMemory>,
}

impl Designer<'_> {
    fn design(&mut self, x: &CMatrix, pilots: &[CVector], variants: &[Variant]) -> Result<Vec<PrecoderSet>> {
        let cfg = self.config;
        let e_p = cfg.pilot_power();
        let u_count = pilots.len();
        let full: Vec<CVector> = pilots.iter().map(|p| ls_estimate(x, p, e_p)).collect::<Result<_>>()?;
        let (hs, vs): (Vec<CVector>, Vec<CVector>) = match cfg.csi_mode {
            CsiMode::Subarray => pilots
                .iter()
                .map(|p| ls_estimate_subarrays(x, &self.idx, p, e_p))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .unzip(),
            CsiMode::Gather => full
                .iter()
                .map(|h| Ok((extract_subarray(h, &self.idx.horizontal)?, extract_subarray(h, &self.idx.vertical)?)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .unzip(),
        };
        let rank = cfg.projector_rank;
        if self.memory.is_none() {
            let projectors = (0..u_count)
                .map(|u| interference_matrix(&vs, u)?.map(|t| interference_projector(&t, rank)).transpose())
                .collect::<Result<_>>()?;
            self.memory = Some(VerticalMemory { estimates: vs.clone(), projectors });
        }
        let memory = self.memory.as_ref().expect("set above");

        variants
            .iter()
            .map(|variant| {
                let precoders = (0..u_count)
                    .map(|u| {
                        let e = self.budgets[u];
                        let v_est = if variant.vertical_once { &memory.estimates[u] } else { &vs[u] };
                        match variant.method {
                            Method::Mrt => mrt(&full[u], e),
                            Method::Zf => zf(&full[u], interference_matrix(&full, u)?.as_ref(), e, rank),
                            Method::Tmrt => tmrt(&hs[u], v_est, e),
                            Method::Tzf if variant.vertical_once => {
                                match (interference_matrix(&hs, u)?, &memory.projectors[u]) {
                                    (Some(th), Some(kv)) => {
                                        let pair = ProjectorPair::new(interference_projector(&th, rank)?, kv.clone())?;
                                        tzf_with_projectors(&hs[u], v_est, &pair, e)
                                    }
                                    _ => tzf(&hs[u], v_est, None, None, e, rank),
                                }
                            }
                            Method::Tzf => tzf(
                                &hs[u],
                                &vs[u],
                                interference_matrix(&hs, u)?.as_ref(),
                                interference_matrix(&vs, u)?.as_ref(),
                                e,
                                rank,
                            ),
                        }
                    })
                    .collect::<Result<Vec<Precoder>>>()?;
                PrecoderSet::new(precoders, cfg.transmit_power())
            })
            .collect()
    }
}

/// Sum-rate of every variant at every TTI of one Monte-Carlo realization.
fn sumrate_realization(
    config: &ScenarioConfig,
    params: &std::sync::Arc<ChannelParams>,
    tracks: &[TrackSpec],
    variants: &[Variant],
    realization: u64,
) -> Result<Vec<Vec<f64>>> {
    let seed = config.seed;
    let mut ues: Vec<UeChannel> = tracks
        .iter()
        .enumerate()
        .map(|(u, t)| {
            let key = [realization, u as u64];
            UeChannel::new(
                params.clone(),
                *t,
                RngStream::keyed(seed, &[SUMRATE_ANGLES, key[0], key[1]]),
                RngStream::keyed(seed, &[SUMRATE_NLOS, key[0], key[1]]),
            )
        })
        .collect::<Result<_>>()?;
    let pilot_matrix = generate_pilots(config.ue_count, config.pilot_len())?;
    let pilots: Vec<CVector> = (0..config.ue_count).map(|u| pilot_matrix.pilot(u)).collect();
    let mut designer = Designer {
        config,
        idx: subarray_index_sets(&params.geometry),
        budgets: allocate_power(config.transmit_power(), config.ue_count)?,
        memory: None,
    };

    let mut rates = vec![Vec::with_capacity(config.total_ttis as usize); variants.len()];
    let mut current: Vec<PrecoderSet> = Vec::new();
    for n in 0..config.total_ttis {
        if n > 0 {
            for ue in &mut ues {
                ue.advance()?;
            }
        }
        let channels: Vec<CVector> = ues.iter().map(|ue| ue.h().to_vec()).collect();
        if n % config.uplink_period_ttis == 0 {
            let mut rng = RngStream::keyed(seed, &[SUMRATE_UPLINK, realization, n]);
            let x = uplink_receive(&channels, &pilot_matrix, config.pilot_power(), NOISE_VAR, &mut rng)?;
            current = designer.design(&x, &pilots, variants)?;
        }
        for (v, set) in current.iter().enumerate() {
            rates[v].push(sinr_report(&channels, &set.vectors(), NOISE_VAR)?.sum_rate());
        }
    }
    Ok(rates)
}

/// TDD operation: CSI and precoder design at uplink TTIs, sum-rate with the true
/// channels at every TTI, averaged over independent realizations.
pub fn run_sumrate(config: &ScenarioConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let (variants, notes) = sumrate_variants(config);
    if variants.is_empty() {
        return Err(Error::Infeasible(notes.join("; ")));
    }
    let params = config.channel_params()?;
    let tracks = config.track_specs()?;
    let runs: Vec<Vec<Vec<f64>>> = (0..config.sumrate_realizations as u64)
        .into_par_iter()
        .map(|r| sumrate_realization(config, &params, &tracks, &variants, r))
        .collect::<Result<_>>()?;

    let n_real = runs.len() as f64;
    let ttis = config.total_ttis as usize;
    let mut records = Vec::with_capacity(ttis * variants.len());
    for n in 0..ttis {
        for (v, variant) in variants.iter().enumerate() {
            let mean = runs.iter().map(|run| run[v][n]).sum::<f64>() / n_real;
            records.push(SumrateRecord { tti: n as u64, method: variant.label.clone(), sum_rate_bps_hz: mean });
        }
    }
    let summary = variants
        .iter()
        .enumerate()
        .map(|(v, variant)| {
            let per_run: Vec<f64> = runs.iter().map(|run| run[v].iter().sum::<f64>() / ttis as f64).collect();
            let mean = per_run.iter().sum::<f64>() / n_real;
            let ci = if per_run.len() > 1 {
                let var = per_run.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n_real - 1.0);
                1.96 * (var / n_real).sqrt()
            } else {
                0.0
            };
            SumrateSummary {
                method: variant.label.clone(),
                mean_bps_hz: mean,
                ci95_bps_hz: ci,
                realizations: runs.len(),
            }
        })
        .collect();
    Ok(ExperimentResult::new(
        ExperimentKind::Sumrate,
        config,
        notes,
        Summary::Sumrate { methods: summary },
        Records::Sumrate(records),
    ))
}

/// Inputs of one timed design: all UE channels and their sub-array restrictions.
struct DesignInput {
    full: Vec<CVector>,
    horizontal: Vec<CVector>,
    vertical: Vec<CVector>,
}

fn runtime_inputs(config: &ScenarioConfig, geometry: &ArrayGeometry) -> Result<(Vec<DesignInput>, String)> {
    let idx = subarray_index_sets(geometry);
    let mut digest = Sha256::new();
    let inputs = (0..config.runtime_designs as u64)
        .map(|d| {
            let mut rng = RngStream::keyed(config.seed, &[RUNTIME_DRAWS, d]);
            let full: Vec<CVector> = (0..config.ue_count)
                .map(|_| complex_gaussian(&mut rng, geometry.total(), &Covariance::Identity))
                .collect::<Result<_>>()?;
            for z in full.iter().flatten() {
                digest.update(z.re.to_le_bytes());
                digest.update(z.im.to_le_bytes());
            }
            let horizontal = full.iter().map(|h| extract_subarray(h, &idx.horizontal)).collect::<Result<_>>()?;
            let vertical = full.iter().map(|h| extract_subarray(h, &idx.vertical)).collect::<Result<_>>()?;
            Ok(DesignInput { full, horizontal, vertical })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((inputs, hex::encode(digest.finalize())))
}

fn time_design(method: Method, input: &DesignInput, power: f64, config: &ScenarioConfig) -> Result<Precoder> {
    let rank = config.projector_rank;
    match method {
        Method::Mrt => mrt(&input.full[0], power),
        Method::Zf => zf(&input.full[0], interference_matrix(&input.full, 0)?.as_ref(), power, rank),
        Method::Tmrt => tmrt(&input.horizontal[0], &input.vertical[0], power),
        Method::Tzf => tzf(
            &input.horizontal[0],
            &input.vertical[0],
            interference_matrix(&input.horizontal, 0)?.as_ref(),
            interference_matrix(&input.vertical, 0)?.as_ref(),
            power,
            rank,
        ),
    }
}

/// Wall-clock ECDF of single-UE precoder designs on i.i.d. Rayleigh draws.
///
/// Timing runs on the calling thread only.
pub fn run_runtime(config: &ScenarioConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let (variants, notes) =
        sumrate_variants(&ScenarioConfig { tzf_update_policy: TzfUpdatePolicy::Both, ..config.clone() });
    if variants.is_empty() {
        return Err(Error::Infeasible(notes.join("; ")));
    }
    let geometry = config.geometry()?;
    let (inputs, draw_digest) = runtime_inputs(config, &geometry)?;
    let power = config.transmit_power() / config.ue_count as f64;

    let mut ecdfs = Vec::with_capacity(variants.len());
    for variant in &variants {
        let mut i = 0usize;
        let mut failure = None;
        let ecdf = measure_runtime(&variant.label, config.runtime_designs, || {
            let r = time_design(variant.method, &inputs[i % inputs.len()], power, config);
            i += 1;
            if let Err(e) = &r {
                failure.get_or_insert_with(|| e.to_string());
            }
            r
        })?;
        if let Some(msg) = failure {
            return Err(Error::DegenerateInput(format!("{} design failed: {msg}", variant.label)));
        }
        ecdfs.push(ecdf);
    }

    let records = ecdfs
        .iter()
        .flat_map(|e: &RuntimeEcdf| {
            e.samples().iter().enumerate().map(move |(k, &s)| RuntimeRecord {
                method: e.label.clone(),
                sample_idx: k,
                seconds: s,
            })
        })
        .collect();
    let methods = ecdfs
        .iter()
        .map(|e| RuntimeSummary {
            method: e.label.clone(),
            samples: e.samples().len(),
            min_s: e.quantile(0.0),
            q25_s: e.quantile(0.25),
            median_s: e.median(),
            q75_s: e.quantile(0.75),
            max_s: e.quantile(1.0),
        })
        .collect();
    Ok(ExperimentResult::new(
        ExperimentKind::Runtime,
        config,
        notes,
        Summary::Runtime { methods, draw_digest },
        Records::Runtime(records),
    ))
}

pub fn run_experiment(kind: ExperimentKind, config: &ScenarioConfig) -> Result<ExperimentResult> {
    match kind {
        ExperimentKind::Subspace => run_subspace(config),
        ExperimentKind::Sumrate => run_sumrate(config),
        ExperimentKind::Runtime => run_runtime(config),
    }
}
