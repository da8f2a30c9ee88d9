//! Hermitian eigendecomposition.
//!
//! Householder reduction to Hermitian tridiagonal form, a diagonal unitary
//! scaling that makes the off-diagonal real, implicit QL with Wilkinson-style
//! shifts on the resulting real symmetric tridiagonal matrix, and a final
//! back-transformation. Output is deterministic: eigenvalues descending, and
//! in every eigenvector the entry of largest modulus is real and non-negative.

use num_complex::Complex64;

use super::matrix::{dot, CMatrix, CVector, ONE, ZERO};
use crate::error::{Error, Result};

/// Inputs further than this (relative) from Hermitian are rejected.
const HERMITIAN_TOL: f64 = 1e-10;
const MAX_QL_SWEEPS: usize = 60;

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Non-increasing.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal columns, column `j` pairs with `eigenvalues[j]`.
    pub eigenvectors: CMatrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V Λ Vᴴ`
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        CMatrix::from_fn(n, n, |r, c| {
            (0..n).fold(ZERO, |acc, k| acc + v[(r, k)] * self.eigenvalues[k] * v[(c, k)].conj())
        })
    }
}

struct Reflector {
    /// First index the reflector acts on.
    offset: usize,
    u: CVector,
    tau: f64,
}

impl Reflector {
    /// `z ← (I − τ u uᴴ) z` on indices `offset..`.
    fn apply(&self, z: &mut [Complex64]) {
        let tail = &mut z[self.offset..];
        let s = dot(&self.u, tail) * self.tau;
        for (t, &u) in tail.iter_mut().zip(&self.u) {
            *t -= u * s;
        }
    }
}

pub fn hermitian_evd(a: &CMatrix) -> Result<EigenDecomposition> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("eigendecomposition of non-square {}x{} matrix", a.rows(), a.cols())));
    }
    if !a.is_finite() {
        return Err(Error::Argument("matrix has non-finite entries".into()));
    }
    let scale = a.frobenius_norm().max(1.0);
    let defect = a.hermitian_defect();
    if defect > HERMITIAN_TOL * scale {
        return Err(Error::Argument(format!("matrix is not Hermitian (‖A−Aᴴ‖_F = {defect:.3e})")));
    }

    let n = a.rows();
    let mut work = CMatrix::from_fn(n, n, |r, c| (a[(r, c)] + a[(c, r)].conj()) * 0.5);
    let reflectors = tridiagonalize(&mut work);

    let mut diag: Vec<f64> = (0..n).map(|i| work[(i, i)].re).collect();
    let off: Vec<Complex64> = (0..n.saturating_sub(1)).map(|i| work[(i + 1, i)]).collect();

    // T = D S Dᴴ with S real: δ₀ = 1, δᵢ₊₁ = δᵢ · eᵢ/|eᵢ|.
    let mut phases = vec![ONE; n];
    let mut sub = vec![0.0; n];
    for (i, &e) in off.iter().enumerate() {
        let mag = e.norm();
        sub[i] = mag;
        phases[i + 1] = if mag > 0.0 { phases[i] * (e / mag) } else { phases[i] };
    }

    // Rows of `basis` are the eigenvectors of S.
    let mut basis: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = vec![0.0; n];
            row[i] = 1.0;
            row
        })
        .collect();
    tridiagonal_ql(&mut diag, &mut sub, &mut basis)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));

    let mut vectors: Vec<CVector> = Vec::with_capacity(n);
    for &j in &order {
        let mut z: CVector = basis[j].iter().zip(&phases).map(|(&w, &p)| p * w).collect();
        for refl in reflectors.iter().rev() {
            refl.apply(&mut z);
        }
        fix_phase(&mut z);
        vectors.push(z);
    }

    let eigenvalues = order.iter().map(|&j| diag[j]).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |r, c| vectors[c][r]);
    Ok(EigenDecomposition { eigenvalues, eigenvectors })
}

/// The `k` eigenvectors of largest eigenvalue, as the columns of an `n x k` matrix.
pub fn dominant_eigenvectors(a: &CMatrix, k: usize) -> Result<CMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("non-square {}x{} matrix", a.rows(), a.cols())));
    }
    if k == 0 || k > a.rows() {
        return Err(Error::Argument(format!("requested {k} eigenvectors of a {}-dimensional matrix", a.rows())));
    }
    let evd = hermitian_evd(a)?;
    let v = &evd.eigenvectors;
    Ok(CMatrix::from_fn(a.rows(), k, |r, c| v[(r, c)]))
}

/// Rotates `z` so its largest-modulus entry (first one on ties) is real and non-negative.
fn fix_phase(z: &mut [Complex64]) {
    let mut best = 0;
    let mut best_mag = -1.0;
    for (i, v) in z.iter().enumerate() {
        let m = v.norm_sqr();
        if m > best_mag {
            best_mag = m;
            best = i;
        }
    }
    if best_mag <= 0.0 {
        return;
    }
    let pivot = z[best];
    let rot = pivot.conj() / pivot.norm();
    for v in z.iter_mut() {
        *v *= rot;
    }
    z[best] = Complex64::new(z[best].norm(), 0.0);
}

/// Reduces `a` in place to Hermitian tridiagonal form `Qᴴ A Q` and returns
/// the reflectors whose product (in order) is `Q`.
fn tridiagonalize(a: &mut CMatrix) -> Vec<Reflector> {
    let n = a.rows();
    let mut reflectors = Vec::with_capacity(n.saturating_sub(2));
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        // Column k below the diagonal, read through the Hermitian row.
        let x: CVector = a.row(k)[k + 1..].iter().map(|z| z.conj()).collect();
        let tail_sq: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
        if tail_sq == 0.0 {
            continue;
        }
        let alpha = (x[0].norm_sqr() + tail_sq).sqrt();
        let phase = if x[0] == ZERO { ONE } else { x[0] / x[0].norm() };
        let mut u = x;
        u[0] += phase * alpha;
        let tau = 2.0 / u.iter().map(|z| z.norm_sqr()).sum::<f64>();

        // Trailing block update A ← H A H = A − u qᴴ − q uᴴ.
        let mut p = vec![ZERO; m];
        for (i, pi) in p.iter_mut().enumerate() {
            let row = &a.row(k + 1 + i)[k + 1..];
            *pi = row.iter().zip(&u).fold(ZERO, |acc, (&r, &uj)| acc + r * uj) * tau;
        }
        let kappa = 0.5 * tau * dot(&u, &p).re;
        let q: CVector = p.iter().zip(&u).map(|(&pi, &ui)| pi - ui * kappa).collect();
        for i in 0..m {
            let (ui, qi) = (u[i], q[i]);
            let row = &mut a.row_mut(k + 1 + i)[k + 1..];
            for ((r, &uj), &qj) in row.iter_mut().zip(&u).zip(&q) {
                *r -= ui * qj.conj() + qi * uj.conj();
            }
        }

        let beta = -phase * alpha;
        a[(k + 1, k)] = beta;
        a[(k, k + 1)] = beta.conj();
        for i in k + 2..n {
            a[(i, k)] = ZERO;
            a[(k, i)] = ZERO;
        }
        reflectors.push(Reflector { offset: k + 1, u, tau });
    }
    reflectors
}

/// Implicit QL on a real symmetric tridiagonal matrix.
///
/// `diag` holds the diagonal, `sub[i]` couples `i` and `i+1` (`sub[n-1]` is
/// ignored). On return `diag` holds the eigenvalues and `basis[j]` the
/// eigenvector of `diag[j]`, provided `basis` started as the identity.
fn tridiagonal_ql(diag: &mut [f64], sub: &mut [f64], basis: &mut [Vec<f64>]) -> Result<()> {
    let n = diag.len();
    if n == 0 {
        return Ok(());
    }
    sub[n - 1] = 0.0;
    // Absolute floor: in a cluster of (near-)zero eigenvalues the relative test never fires.
    let floor = f64::EPSILON * diag.iter().zip(sub.iter()).map(|(d, e)| d.abs() + e.abs()).fold(0.0, f64::max);
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if sub[m].abs() <= f64::EPSILON * dd || sub[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_QL_SWEEPS {
                return Err(Error::Decomposition(format!("QL iteration did not converge for eigenvalue {l}")));
            }

            let mut g = (diag[l + 1] - diag[l]) / (2.0 * sub[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + sub[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * sub[i];
                let b = c * sub[i];
                r = f.hypot(g);
                sub[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    sub[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;

                let (lo, hi) = basis.split_at_mut(i + 1);
                let (vi, vi1) = (&mut lo[i], &mut hi[0]);
                for (x, y) in vi.iter_mut().zip(vi1.iter_mut()) {
                    let t = *y;
                    *y = s * *x + c * t;
                    *x = c * *x - s * t;
                }
            }
            if underflow {
                continue;
            }
            diag[l] -= p;
            sub[l] = g;
            sub[m] = 0.0;
        }
    }
    Ok(())
}
