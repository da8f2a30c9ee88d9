//! MRT, ZF and their tensor (Kronecker-structured) counterparts.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, hermitian_evd, kron_apply, kron_vec, norm, CMatrix, CVector};

/// `‖P h‖ < DEGENERATE_TOL · ‖h‖` is reported as a degenerate projection.
pub const DEGENERATE_TOL: f64 = 1e-12;
/// Eigenvalues below this fraction of the largest are dropped by [`ProjectorRank::Adaptive`].
pub const ADAPTIVE_RANK_TOL: f64 = 1e-10;
const PROJECTOR_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "MRT")]
    Mrt,
    #[serde(rename = "ZF")]
    Zf,
    #[serde(rename = "TMRT")]
    Tmrt,
    #[serde(rename = "TZF")]
    Tzf,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Mrt, Method::Zf, Method::Tmrt, Method::Tzf];

    pub fn label(self) -> &'static str {
        match self {
            Method::Mrt => "MRT",
            Method::Zf => "ZF",
            Method::Tmrt => "TMRT",
            Method::Tzf => "TZF",
        }
    }

    pub fn is_tensor(self) -> bool {
        matches!(self, Method::Tmrt | Method::Tzf)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// How many Gram eigenvectors span the interference subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectorRank {
    /// Always `U − 1`.
    #[default]
    Fixed,
    /// Eigenvalues above `1e-10·λ_max` only.
    Adaptive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Precoder {
    pub f: CVector,
    pub method: Method,
    /// `‖f‖²`
    pub power: f64,
}

impl Precoder {
    fn scaled(method: Method, direction: &[Complex64], power: f64) -> Result<Self> {
        let n = norm(direction);
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::DegenerateInput(format!("{method}: zero or non-finite direction")));
        }
        let s = power.sqrt() / n;
        Ok(Self { f: direction.iter().map(|z| z * s).collect(), method, power })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrecoderSet {
    pub precoders: Vec<Precoder>,
    pub total_power: f64,
}

impl PrecoderSet {
    pub fn new(precoders: Vec<Precoder>, total_power: f64) -> Result<Self> {
        let used: f64 = precoders.iter().map(|p| norm(&p.f).powi(2)).sum();
        if used > total_power + 1e-9 {
            return Err(Error::Argument(format!("precoders use {used} > budget {total_power}")));
        }
        Ok(Self { precoders, total_power })
    }

    pub fn vectors(&self) -> Vec<&[Complex64]> {
        self.precoders.iter().map(|p| p.f.as_slice()).collect()
    }
}

/// Column-space projectors of the horizontal and vertical interference Grams.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorPair {
    pub horizontal: CMatrix,
    pub vertical: CMatrix,
}

impl ProjectorPair {
    /// Checks that both factors are Hermitian idempotents, so `I − K_H⊗K_V` is a projector.
    pub fn new(horizontal: CMatrix, vertical: CMatrix) -> Result<Self> {
        for (name, k) in [("horizontal", &horizontal), ("vertical", &vertical)] {
            let sq = k.matmul(k)?;
            let scale = k.frobenius_norm().max(1.0);
            if sq.sub(k)?.frobenius_norm() > PROJECTOR_TOL * scale || k.hermitian_defect() > PROJECTOR_TOL * scale {
                return Err(Error::Decomposition(format!("{name} factor is not an orthogonal projector")));
            }
        }
        Ok(Self { horizontal, vertical })
    }

    /// `(I − K_H⊗K_V)·x` without forming the Kronecker product.
    pub fn apply_complement(&self, x: &[Complex64]) -> Result<CVector> {
        let k = kron_apply(&self.horizontal, &self.vertical, x)?;
        Ok(x.iter().zip(&k).map(|(a, b)| a - b).collect())
    }
}

pub fn mrt(h: &[Complex64], power: f64) -> Result<Precoder> {
    Precoder::scaled(Method::Mrt, h, power).map_err(|_| Error::DegenerateInput("MRT of a zero channel".into()))
}

/// Rows `h_jᴴ` for every `j ≠ u` in ascending order; `None` for a single UE.
pub fn interference_matrix(channels: &[CVector], u: usize) -> Result<Option<CMatrix>> {
    if u >= channels.len() {
        return Err(Error::Argument(format!("UE {u} out of range ({} UEs)", channels.len())));
    }
    if channels.len() == 1 {
        return Ok(None);
    }
    let m = channels[0].len();
    if channels.iter().any(|h| h.len() != m) {
        return Err(Error::Dimension("channels of unequal length".into()));
    }
    let rows: Vec<Complex64> =
        channels.iter().enumerate().filter(|&(j, _)| j != u).flat_map(|(_, h)| h.iter().map(|z| z.conj())).collect();
    CMatrix::new(channels.len() - 1, m, rows).map(Some)
}

/// Orthonormal basis (columns) of the dominant eigenspace of `H̃ᴴH̃`.
pub fn interference_basis(h_tilde: &CMatrix, rank: ProjectorRank) -> Result<CMatrix> {
    let gram = h_tilde.adjoint().matmul(h_tilde)?;
    let evd = hermitian_evd(&gram)?;
    let n = gram.rows();
    let k = match rank {
        ProjectorRank::Fixed => h_tilde.rows().min(n),
        ProjectorRank::Adaptive => {
            let lmax = evd.eigenvalues.first().copied().unwrap_or(0.0);
            evd.eigenvalues.iter().take(h_tilde.rows()).filter(|&&l| lmax > 0.0 && l > ADAPTIVE_RANK_TOL * lmax).count()
        }
    };
    let v = &evd.eigenvectors;
    if k == 0 {
        return Ok(CMatrix::zeros(n, 1));
    }
    Ok(CMatrix::from_fn(n, k, |r, c| v[(r, c)]))
}

/// `Ṽ Ṽᴴ` for the dominant eigenvectors of `H̃ᴴH̃`.
pub fn interference_projector(h_tilde: &CMatrix, rank: ProjectorRank) -> Result<CMatrix> {
    let v = interference_basis(h_tilde, rank)?;
    v.matmul(&v.adjoint())
}

fn project_out(basis: &CMatrix, h: &[Complex64]) -> CVector {
    let mut out = h.to_vec();
    for c in 0..basis.cols() {
        let col = basis.column(c);
        let w = dot(&col, h);
        for (o, v) in out.iter_mut().zip(&col) {
            *o -= v * w;
        }
    }
    out
}

fn normalize_projection(
    method: Method,
    projected: &[Complex64],
    reference: &[Complex64],
    power: f64,
) -> Result<Precoder> {
    let r = norm(reference);
    if r == 0.0 {
        return Err(Error::DegenerateInput(format!("{method} of a zero channel")));
    }
    if norm(projected) < DEGENERATE_TOL * r {
        return Err(Error::ProjectionDegenerate(format!(
            "{method}: intended channel lies in the interference subspace"
        )));
    }
    Precoder::scaled(method, projected, power)
}

/// Zero-forcing: `f ∝ (I − ṼṼᴴ) h`; MRT direction when there is no interference.
pub fn zf(h: &[Complex64], h_tilde: Option<&CMatrix>, power: f64, rank: ProjectorRank) -> Result<Precoder> {
    let Some(h_tilde) = h_tilde else {
        return normalize_projection(Method::Zf, h, h, power);
    };
    if h_tilde.cols() != h.len() {
        return Err(Error::Dimension(format!("interference has {} columns, channel {}", h_tilde.cols(), h.len())));
    }
    let users = h_tilde.rows() + 1;
    if h.len() < users {
        return Err(Error::Infeasible(format!("ZF needs at least {users} antennas, array has {}", h.len())));
    }
    let basis = interference_basis(h_tilde, rank)?;
    normalize_projection(Method::Zf, &project_out(&basis, h), h, power)
}

/// `f = (e^{1/4} h_H/‖h_H‖) ⊗ (e^{1/4} h_V/‖h_V‖)`.
pub fn tmrt(h_h: &[Complex64], h_v: &[Complex64], power: f64) -> Result<Precoder> {
    let (nh, nv) = (norm(h_h), norm(h_v));
    if !(nh > 0.0 && nv > 0.0) {
        return Err(Error::DegenerateInput("TMRT of a zero sub-array channel".into()));
    }
    let s = power.sqrt() / (nh * nv);
    let f: CVector = kron_vec(h_h, h_v).into_iter().map(|z| z * s).collect();
    Ok(Precoder { f, method: Method::Tmrt, power })
}

pub fn tzf_feasible(m_h: usize, m_v: usize, u_count: usize) -> bool {
    m_h.min(m_v) + 1 > u_count
}

/// `K_H`, `K_V` from the sub-array interference matrices.
pub fn tzf_projectors(h_tilde_h: &CMatrix, h_tilde_v: &CMatrix, rank: ProjectorRank) -> Result<ProjectorPair> {
    if h_tilde_h.rows() != h_tilde_v.rows() {
        return Err(Error::Dimension("horizontal and vertical interference differ in UE count".into()));
    }
    let (m_h, m_v) = (h_tilde_h.cols(), h_tilde_v.cols());
    if !tzf_feasible(m_h, m_v, h_tilde_h.rows() + 1) {
        return Err(Error::Infeasible(format!(
            "TZF needs min(M_H, M_V) > U − 1, got {m_h}x{m_v} with {} UEs",
            h_tilde_h.rows() + 1
        )));
    }
    ProjectorPair::new(interference_projector(h_tilde_h, rank)?, interference_projector(h_tilde_v, rank)?)
}

/// TZF with precomputed projectors.
pub fn tzf_with_projectors(
    h_h: &[Complex64],
    h_v: &[Complex64],
    projectors: &ProjectorPair,
    power: f64,
) -> Result<Precoder> {
    if projectors.horizontal.rows() != h_h.len() || projectors.vertical.rows() != h_v.len() {
        return Err(Error::Dimension("projector sizes do not match the sub-array channels".into()));
    }
    if norm(h_h) == 0.0 || norm(h_v) == 0.0 {
        return Err(Error::DegenerateInput("TZF of a zero sub-array channel".into()));
    }
    let x = kron_vec(h_h, h_v);
    normalize_projection(Method::Tzf, &projectors.apply_complement(&x)?, &x, power)
}

/// Tensor zero-forcing: `f ∝ (I − K_H⊗K_V)(h_H⊗h_V)`; TMRT direction without interference.
pub fn tzf(
    h_h: &[Complex64],
    h_v: &[Complex64],
    h_tilde_h: Option<&CMatrix>,
    h_tilde_v: Option<&CMatrix>,
    power: f64,
    rank: ProjectorRank,
) -> Result<Precoder> {
    match (h_tilde_h, h_tilde_v) {
        (None, None) => {
            let mut p = tmrt(h_h, h_v, power)?;
            p.method = Method::Tzf;
            Ok(p)
        }
        (Some(th), Some(tv)) => {
            if th.cols() != h_h.len() || tv.cols() != h_v.len() {
                return Err(Error::Dimension("interference and sub-array channel lengths differ".into()));
            }
            tzf_with_projectors(h_h, h_v, &tzf_projectors(th, tv, rank)?, power)
        }
        _ => Err(Error::Argument("TZF needs both horizontal and vertical interference or neither".into())),
    }
}

/// Equal split of the total budget.
pub fn allocate_power(total: f64, u_count: usize) -> Result<Vec<f64>> {
    if !(total >= 0.0 && total.is_finite()) || u_count == 0 {
        return Err(Error::Argument(format!("cannot split power {total} over {u_count} UEs")));
    }
    Ok(vec![total / u_count as f64; u_count])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{extract_subarray, los_channel, steering_full, subarray_index_sets, ArrayGeometry, Isotropic};
    use crate::linalg::{complex_gaussian, kron, Covariance, RngStream};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn randn(rng: &mut RngStream, n: usize) -> CVector {
        complex_gaussian(rng, n, &Covariance::Identity).unwrap()
    }

    fn chordal(a: &[Complex64], b: &[Complex64]) -> f64 {
        1.0 - dot(a, b).norm_sqr() / (norm(a).powi(2) * norm(b).powi(2))
    }

    #[test]
    fn mrt_examples() {
        let p = mrt(&[c(1.0, 0.0), c(0.0, 1.0)], 1.0).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((p.f[0] - c(s, 0.0)).norm() < 1e-15 && (p.f[1] - c(0.0, s)).norm() < 1e-15);
        assert!(matches!(mrt(&[c(0.0, 0.0)], 1.0), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn mrt_is_maximal() {
        let mut rng = RngStream::new(1, 0);
        let h = randn(&mut rng, 8);
        let e = 2.0;
        let f = mrt(&h, e).unwrap().f;
        let best = dot(&h, &f).norm_sqr();
        assert!((best - e * norm(&h).powi(2)).abs() < 1e-10);
        for _ in 0..100 {
            let g = randn(&mut rng, 8);
            let g: CVector = g.iter().map(|z| z * (e.sqrt() / norm(&g))).collect();
            assert!(dot(&h, &g).norm_sqr() <= best + 1e-12);
        }
    }

    #[test]
    fn interference_rows() {
        let chans: Vec<CVector> = (0..3).map(|u| vec![c(u as f64, 1.0), c(0.0, u as f64)]).collect();
        let m = interference_matrix(&chans[..2], 0).unwrap().unwrap();
        assert_eq!(m.rows(), 1);
        assert_eq!(m.row(0), &[c(1.0, -1.0), c(0.0, -1.0)]);
        let m = interference_matrix(&chans, 1).unwrap().unwrap();
        assert_eq!(m.row(0), &[c(0.0, -1.0), c(0.0, 0.0)]);
        assert_eq!(m.row(1), &[c(2.0, -1.0), c(0.0, -2.0)]);
        assert!(interference_matrix(&chans[..1], 0).unwrap().is_none());
        assert!(interference_matrix(&chans, 3).is_err());
    }

    #[test]
    fn zf_examples() {
        let e1 = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let e2 = vec![c(0.0, 0.0), c(1.0, 0.0)];
        let chans = vec![e1.clone(), e2];
        let ht = interference_matrix(&chans, 0).unwrap();
        let f = zf(&e1, ht.as_ref(), 1.0, ProjectorRank::Fixed).unwrap();
        assert!(crate::linalg::sub(&f.f, &e1).iter().all(|z| z.norm() < 1e-15));

        let mut rng = RngStream::new(2, 0);
        let h = randn(&mut rng, 5);
        assert_eq!(zf(&h, None, 1.5, ProjectorRank::Fixed).unwrap().f, mrt(&h, 1.5).unwrap().f);
    }

    #[test]
    fn zf_nulls_random_interference() {
        let mut rng = RngStream::new(3, 0);
        for _ in 0..10 {
            let chans: Vec<CVector> = (0..3).map(|_| randn(&mut rng, 16)).collect();
            for u in 0..3 {
                let ht = interference_matrix(&chans, u).unwrap();
                let f = zf(&chans[u], ht.as_ref(), 1.0, ProjectorRank::Fixed).unwrap().f;
                for (j, h) in chans.iter().enumerate().filter(|&(j, _)| j != u) {
                    let leak = dot(h, &f).norm() / (norm(h) * norm(&f));
                    assert!(leak < 1e-10, "u={u} j={j} {leak:e}");
                }
                assert!((norm(&f).powi(2) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zf_errors() {
        let mut rng = RngStream::new(4, 0);
        let chans: Vec<CVector> = (0..3).map(|_| randn(&mut rng, 2)).collect();
        let ht = interference_matrix(&chans, 0).unwrap();
        assert!(matches!(zf(&chans[0], ht.as_ref(), 1.0, ProjectorRank::Fixed), Err(Error::Infeasible(_))));
        let h = randn(&mut rng, 4);
        let inside: CVector = h.iter().map(|z| z * c(0.0, 2.0)).collect();
        let ht = interference_matrix(&[inside, h.clone()], 1).unwrap();
        assert!(matches!(zf(&h, ht.as_ref(), 1.0, ProjectorRank::Fixed), Err(Error::ProjectionDegenerate(_))));
    }

    #[test]
    fn projector_algebra() {
        let mut rng = RngStream::new(5, 0);
        let chans: Vec<CVector> = (0..4).map(|_| randn(&mut rng, 9)).collect();
        let ht = interference_matrix(&chans, 2).unwrap().unwrap();
        let k = interference_projector(&ht, ProjectorRank::Fixed).unwrap();
        let p = CMatrix::identity(9).sub(&k).unwrap();
        assert!(p.matmul(&p).unwrap().sub(&p).unwrap().frobenius_norm() < 1e-9);
        assert!(p.hermitian_defect() < 1e-9);
        let trace: f64 = (0..9).map(|i| k[(i, i)].re).sum();
        assert!((trace - 3.0).abs() < 1e-9);
    }

    #[test]
    fn adaptive_rank_drops_null_directions() {
        let h = vec![c(1.0, 0.0), c(0.5, 0.5), c(0.0, 1.0)];
        // Two identical interferers: Gram has rank 1.
        let ht = CMatrix::from_rows(&[&h, &h]).unwrap();
        let fixed = interference_basis(&ht, ProjectorRank::Fixed).unwrap();
        let adaptive = interference_basis(&ht, ProjectorRank::Adaptive).unwrap();
        assert_eq!(fixed.cols(), 2);
        assert_eq!(adaptive.cols(), 1);
    }

    #[test]
    fn tmrt_examples() {
        let g = ArrayGeometry::new(4, 4, 0.5, 0.5, 1.0).unwrap();
        let idx = subarray_index_sets(&g);
        let h = los_channel(0.8, &steering_full(&g, -0.3, 1.1, &Isotropic));
        let hh = extract_subarray(&h, &idx.horizontal).unwrap();
        let hv = extract_subarray(&h, &idx.vertical).unwrap();
        let t = tmrt(&hh, &hv, 1.0).unwrap();
        assert!(chordal(&t.f, &mrt(&h, 1.0).unwrap().f) < 1e-12);

        let s = [c(0.6, -0.8)];
        let t = tmrt(&s, &s, 4.0).unwrap();
        let m = mrt(&[s[0] * s[0]], 4.0).unwrap();
        assert!((t.f[0] - m.f[0]).norm() < 1e-15);

        let mut rng = RngStream::new(6, 0);
        let t = tmrt(&randn(&mut rng, 5), &randn(&mut rng, 3), 0.7).unwrap();
        assert!((norm(&t.f).powi(2) - 0.7).abs() < 1e-12);
        assert!(tmrt(&[c(0.0, 0.0)], &s, 1.0).is_err());
    }

    #[test]
    fn feasibility_examples() {
        assert!(tzf_feasible(16, 16, 3));
        assert!(!tzf_feasible(2, 16, 3));
        assert!(tzf_feasible(1, 1, 1));
    }

    fn shared_elevation_scenario(elevations: [f64; 3]) -> (ArrayGeometry, Vec<CVector>) {
        let g = ArrayGeometry::new(8, 8, 0.5, 0.5, 1.0).unwrap();
        let az = [0.3, 1.0, 2.2];
        let chans =
            (0..3).map(|u| los_channel(0.4 * u as f64, &steering_full(&g, elevations[u], az[u], &Isotropic))).collect();
        (g, chans)
    }

    #[test]
    fn tzf_nulls_shared_elevation_los() {
        let e = -0.45;
        let (g, chans) = shared_elevation_scenario([e, e, e]);
        let idx = subarray_index_sets(&g);
        let subs: Vec<(CVector, CVector)> = chans
            .iter()
            .map(|h| (extract_subarray(h, &idx.horizontal).unwrap(), extract_subarray(h, &idx.vertical).unwrap()))
            .collect();
        let hs: Vec<CVector> = subs.iter().map(|s| s.0.clone()).collect();
        let vs: Vec<CVector> = subs.iter().map(|s| s.1.clone()).collect();
        for u in 0..3 {
            let th = interference_matrix(&hs, u).unwrap().unwrap();
            let tv = interference_matrix(&vs, u).unwrap().unwrap();
            let f = tzf(&hs[u], &vs[u], Some(&th), Some(&tv), 1.0, ProjectorRank::Fixed).unwrap().f;
            for (j, h) in chans.iter().enumerate().filter(|&(j, _)| j != u) {
                assert!(dot(h, &f).norm() / (norm(h) * norm(&f)) < 1e-6, "u={u} j={j}");
            }
            // Dense reference.
            let pair = tzf_projectors(&th, &tv, ProjectorRank::Fixed).unwrap();
            let dense = CMatrix::identity(64).sub(&kron(&pair.horizontal, &pair.vertical)).unwrap();
            let x = kron_vec(&hs[u], &vs[u]);
            let y = dense.matvec(&x).unwrap();
            let y: CVector = y.iter().map(|z| z / norm(&y)).collect();
            assert!(crate::linalg::sub(&y, &f).iter().all(|z| z.norm() < 1e-12));
        }
    }

    #[test]
    fn tzf_single_ue_is_tmrt_and_errors() {
        let mut rng = RngStream::new(7, 0);
        let (hh, hv) = (randn(&mut rng, 4), randn(&mut rng, 3));
        let t = tzf(&hh, &hv, None, None, 1.0, ProjectorRank::Fixed).unwrap();
        assert_eq!(t.f, tmrt(&hh, &hv, 1.0).unwrap().f);
        assert_eq!(t.method, Method::Tzf);
        let th = CMatrix::from_fn(2, 4, |_, _| rng.complex_normal());
        let tv = CMatrix::from_fn(2, 2, |_, _| rng.complex_normal());
        assert!(matches!(
            tzf(&hh, &hv[..2], Some(&th), Some(&tv), 1.0, ProjectorRank::Fixed),
            Err(Error::Infeasible(_))
        ));
        assert!(tzf(&hh, &hv, Some(&th), None, 1.0, ProjectorRank::Fixed).is_err());
    }

    #[test]
    fn projector_pair_rejects_non_projectors() {
        let bad = CMatrix::identity(2).scale(c(2.0, 0.0));
        assert!(ProjectorPair::new(bad, CMatrix::identity(2)).is_err());
    }

    #[test]
    fn power_allocation() {
        assert_eq!(allocate_power(1.0, 4).unwrap(), vec![0.25; 4]);
        assert_eq!(allocate_power(0.0, 3).unwrap(), vec![0.0; 3]);
        let b = allocate_power(10.0, 3).unwrap();
        assert!((b.iter().sum::<f64>() - 10.0).abs() < 1e-14);
        assert!(allocate_power(1.0, 0).is_err());
    }

    #[test]
    fn precoder_set_budget() {
        let p = mrt(&[c(1.0, 0.0)], 0.6).unwrap();
        assert!(PrecoderSet::new(vec![p.clone(), p.clone()], 1.2).is_ok());
        assert!(PrecoderSet::new(vec![p.clone(), p], 1.0).is_err());
    }
}
