mod common;

use common::j0_oracle;
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use upa_precoding::linalg::{
    bessel_j0, dominant_eigenvectors, hermitian_evd, kron, kron_vec, norm, CMatrix, RngStream,
};

fn random_hermitian(n: usize, rng: &mut RngStream) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| rng.complex_normal());
    g.add(&g.adjoint()).unwrap().scale(Complex64::new(0.5, 0.0))
}

fn to_nalgebra(a: &CMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(a.rows(), a.cols(), |r, c| a[(r, c)])
}

fn projector(v: &CMatrix) -> CMatrix {
    v.matmul(&v.adjoint()).unwrap()
}

#[test]
fn j0_matches_big_integer_series() {
    assert_eq!(j0_oracle(0.0), 1.0);
    assert!((j0_oracle(1.0) - 0.765_197_686_557_966_6).abs() < 1e-15);
    let mut worst: f64 = 0.0;
    for i in 0..=2000 {
        let x = i as f64 / 40.0;
        worst = worst.max((bessel_j0(x).unwrap() - j0_oracle(x)).abs());
    }
    let mut rng = RngStream::new(41, 0);
    for _ in 0..500 {
        let x = 50.0 * rng.uniform();
        worst = worst.max((bessel_j0(x).unwrap() - j0_oracle(x)).abs());
    }
    assert!(worst < 1e-10, "max |error| = {worst:e}");
}

#[test]
fn j0_at_one_tti_of_thirty_meters_per_second() {
    let x = 2.0 * std::f64::consts::PI * 600.0 * 1e-3;
    let j = bessel_j0(x).unwrap();
    assert!((j - j0_oracle(x)).abs() < 1e-12);
    assert!((j + 0.40).abs() < 5e-3);
}

#[test]
fn evd_reconstructs_random_hermitian() {
    let mut rng = RngStream::new(5, 1);
    for &n in &[1, 2, 4, 7, 16, 33] {
        let a = random_hermitian(n, &mut rng);
        let evd = hermitian_evd(&a).unwrap();
        let err = evd.reconstruct().sub(&a).unwrap().frobenius_norm();
        assert!(err <= 1e-10 * a.frobenius_norm().max(1.0), "n={n} err={err:e}");
        let v = &evd.eigenvectors;
        let gram = v.adjoint().matmul(v).unwrap();
        assert!(gram.sub(&CMatrix::identity(n)).unwrap().frobenius_norm() < 1e-10);
        assert!(evd.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }
}

#[test]
fn evd_eigenvalues_match_nalgebra() {
    let mut rng = RngStream::new(6, 2);
    for &n in &[3, 8, 20] {
        let a = random_hermitian(n, &mut rng);
        let ours = hermitian_evd(&a).unwrap().eigenvalues;
        let mut theirs: Vec<f64> = to_nalgebra(&a).symmetric_eigenvalues().iter().copied().collect();
        theirs.sort_by(|x, y| y.total_cmp(x));
        for (x, y) in ours.iter().zip(&theirs) {
            assert!((x - y).abs() < 1e-10 * (1.0 + y.abs()), "{x} vs {y}");
        }
    }
}

#[test]
fn evd_psd_eigenvalues_non_negative() {
    let mut rng = RngStream::new(7, 3);
    let g = CMatrix::from_fn(6, 3, |_, _| rng.complex_normal());
    let psd = g.matmul(&g.adjoint()).unwrap();
    let evd = hermitian_evd(&psd).unwrap();
    assert!(evd.eigenvalues.iter().all(|&l| l >= -1e-10));
    assert!(evd.eigenvalues[3..].iter().all(|&l| l.abs() < 1e-10));
}

#[test]
fn evd_is_deterministic() {
    let mut rng = RngStream::new(8, 4);
    let a = random_hermitian(12, &mut rng);
    let x = hermitian_evd(&a).unwrap();
    let y = hermitian_evd(&a).unwrap();
    assert_eq!(x.eigenvalues, y.eigenvalues);
    assert_eq!(x.eigenvectors, y.eigenvectors);
}

#[test]
fn dominant_span_of_two_rank_one_terms() {
    let mut rng = RngStream::new(9, 5);
    let n = 6;
    let a: Vec<Complex64> = (0..n).map(|_| rng.complex_normal()).collect();
    let b: Vec<Complex64> = (0..n).map(|_| rng.complex_normal()).collect();
    let mut m = CMatrix::outer(&a).scale(Complex64::new(3.0, 0.0));
    m = m.add(&CMatrix::outer(&b)).unwrap();
    let v = dominant_eigenvectors(&m, 2).unwrap();
    // Orthonormal basis of span{a, b} by Gram–Schmidt.
    let q1: Vec<Complex64> = a.iter().map(|z| z / norm(&a)).collect();
    let proj = upa_precoding::linalg::dot(&q1, &b);
    let r: Vec<Complex64> = b.iter().zip(&q1).map(|(z, q)| z - q * proj).collect();
    let q2: Vec<Complex64> = r.iter().map(|z| z / norm(&r)).collect();
    let q = CMatrix::from_columns(&[&q1, &q2]).unwrap();
    let d = projector(&v).sub(&projector(&q)).unwrap().frobenius_norm();
    assert!(d < 1e-10, "{d:e}");
}

#[test]
fn mixed_product_brute_force_2x2() {
    let mut rng = RngStream::new(10, 6);
    let mut m = || CMatrix::from_fn(2, 2, |_, _| rng.complex_normal());
    let (a, b, c, d) = (m(), m(), m(), m());
    let lhs = kron(&a, &b).matmul(&kron(&c, &d)).unwrap();
    let ac = a.matmul(&c).unwrap();
    let bd = b.matmul(&d).unwrap();
    // Entry ((i,k),(j,l)) of the product expanded by hand.
    for i in 0..2 {
        for k in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    let mut s = Complex64::new(0.0, 0.0);
                    for p in 0..2 {
                        for q in 0..2 {
                            s += a[(i, p)] * b[(k, q)] * c[(p, j)] * d[(q, l)];
                        }
                    }
                    assert!((lhs[(2 * i + k, 2 * j + l)] - s).norm() < 1e-12);
                    assert!((ac[(i, j)] * bd[(k, l)] - s).norm() < 1e-12);
                }
            }
        }
    }
}

fn complex_entries(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), len)
        .prop_map(|v| v.into_iter().map(|(r, i)| Complex64::new(r, i)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn mixed_product_law(
        (ar, ac, br, bc, cc, dc) in (1usize..4, 1usize..4, 1usize..4, 1usize..4, 1usize..4, 1usize..4),
        seed in any::<u64>(),
    ) {
        let mut rng = RngStream::new(seed, 0);
        let mut m = |r: usize, c: usize| CMatrix::from_fn(r, c, |_, _| rng.complex_normal());
        let (a, b, c, d) = (m(ar, ac), m(br, bc), m(ac, cc), m(bc, dc));
        let lhs = kron(&a, &b).matmul(&kron(&c, &d)).unwrap();
        let rhs = kron(&a.matmul(&c).unwrap(), &b.matmul(&d).unwrap());
        let scale = a.frobenius_norm() * b.frobenius_norm() * c.frobenius_norm() * d.frobenius_norm();
        prop_assert!(lhs.sub(&rhs).unwrap().frobenius_norm() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn kron_norm_factorizes(a in (1usize..8).prop_flat_map(complex_entries), b in (1usize..8).prop_flat_map(complex_entries)) {
        let k = kron_vec(&a, &b);
        prop_assert_eq!(k.len(), a.len() * b.len());
        prop_assert!((norm(&k) - norm(&a) * norm(&b)).abs() <= 1e-12 * (1.0 + norm(&k)));
    }

    #[test]
    fn j0_bounded(x in -1e4..1e4f64) {
        prop_assert!(bessel_j0(x).unwrap().abs() <= 1.0);
        prop_assert_eq!(bessel_j0(x).unwrap(), bessel_j0(-x).unwrap());
    }

    #[test]
    fn evd_orthonormal_and_reconstructs(n in 1usize..10, seed in any::<u64>()) {
        let mut rng = RngStream::new(seed, 1);
        let a = random_hermitian(n, &mut rng);
        let evd = hermitian_evd(&a).unwrap();
        let v = &evd.eigenvectors;
        prop_assert!(v.adjoint().matmul(v).unwrap().sub(&CMatrix::identity(n)).unwrap().frobenius_norm() < 1e-10);
        prop_assert!(evd.reconstruct().sub(&a).unwrap().frobenius_norm() <= 1e-9 * a.frobenius_norm().max(1.0));
    }
}
