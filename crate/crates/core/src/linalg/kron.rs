//! Kronecker products and Kronecker-structured operator application.

use num_complex::Complex64;

use super::matrix::{CMatrix, CVector, ZERO};
use crate::error::{Error, Result};

/// Standard Kronecker product, `(ra·rb) x (ca·cb)`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ra, ca, rb, cb) = (a.rows(), a.cols(), b.rows(), b.cols());
    CMatrix::from_fn(ra * rb, ca * cb, |r, c| a[(r / rb, c / cb)] * b[(r % rb, c % cb)])
}

/// Kronecker product of two vectors; element `i·len(b) + j` is `a[i]·b[j]`.
pub fn kron_vec(a: &[Complex64], b: &[Complex64]) -> CVector {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        out.extend(b.iter().map(|&y| x * y));
    }
    out
}

/// Applies `(outer ⊗ inner)` to `x` without forming the Kronecker matrix.
///
/// Uses `(A ⊗ B) vec(X) = vec(B X Aᵀ)`, where `X` is `x` reshaped column-major
/// into an `inner.cols() x outer.cols()` matrix. Cost is
/// `O(len(x) · (outer.rows() + inner.rows()))`.
pub fn kron_apply(outer: &CMatrix, inner: &CMatrix, x: &[Complex64]) -> Result<CVector> {
    let (no, ni) = (outer.cols(), inner.cols());
    if x.len() != no * ni {
        return Err(Error::Dimension(format!(
            "({}x{}) ⊗ ({}x{}) cannot act on length {}",
            outer.rows(),
            no,
            inner.rows(),
            ni,
            x.len()
        )));
    }
    // Column b of X is the contiguous block x[b·ni .. (b+1)·ni].
    let mut out = Vec::with_capacity(outer.rows() * inner.rows());
    let mut mixed = vec![ZERO; ni];
    for r in 0..outer.rows() {
        mixed.iter_mut().for_each(|m| *m = ZERO);
        for (b, &w) in outer.row(r).iter().enumerate() {
            if w == ZERO {
                continue;
            }
            for (m, &xb) in mixed.iter_mut().zip(&x[b * ni..(b + 1) * ni]) {
                *m += w * xb;
            }
        }
        out.extend(inner.matvec(&mixed)?);
    }
    Ok(out)
}
