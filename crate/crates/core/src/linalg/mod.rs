//! Dense complex linear algebra, special functions and random sampling.

mod bessel;
mod evd;
mod kron;
mod matrix;
mod random;

pub use bessel::bessel_j0;
pub use evd::{dominant_eigenvectors, hermitian_evd, EigenDecomposition};
pub use kron::{kron, kron_apply, kron_vec};
pub use matrix::{dot, dot_unconj, norm, norm_sqr, normalized, scaled, sub, CMatrix, CVector, ONE, ZERO};
pub use random::{complex_gaussian, stream_key, Covariance, RngStream};
