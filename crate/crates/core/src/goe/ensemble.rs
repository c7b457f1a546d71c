//! Sampling GOE matrices.

use rand::Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};

use super::GoeEnsembleSpec;
use crate::linalg::{tridiag_eigenvalues, Matrix};

/// A dense GOE(n, a) matrix: H_ii ~ N(0, a), H_ij = H_ji ~ N(0, a/2).
pub fn sample_goe<R: Rng + ?Sized>(spec: &GoeEnsembleSpec, rng: &mut R) -> Matrix {
    let n = spec.n;
    let sd_diag = spec.a.sqrt();
    let sd_off = (0.5 * spec.a).sqrt();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        let z: f64 = rng.sample(StandardNormal);
        m[(i, i)] = sd_diag * z;
        for j in i + 1..n {
            let z: f64 = rng.sample(StandardNormal);
            m[(i, j)] = sd_off * z;
            m[(j, i)] = sd_off * z;
        }
    }
    m
}

/// A symmetric tridiagonal matrix with the same eigenvalue law as GOE(n, a)
/// (the β = 1 Hermite tridiagonal model): diagonal N(0, a), off-diagonal
/// √(a/2)·χ_{n-1}, ..., √(a/2)·χ_1. Returns (diagonal, off-diagonal).
pub fn sample_goe_tridiagonal<R: Rng + ?Sized>(spec: &GoeEnsembleSpec, rng: &mut R) -> (Vec<f64>, Vec<f64>) {
    let n = spec.n;
    let sd = spec.a.sqrt();
    let d = (0..n)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            sd * z
        })
        .collect();
    let e = (1..n)
        .map(|i| {
            let chi2 = ChiSquared::new((n - i) as f64).expect("positive degrees of freedom");
            (0.5 * spec.a * chi2.sample(rng)).sqrt()
        })
        .collect();
    (d, e)
}

/// Ascending eigenvalues of one GOE(n, a) sample, via the tridiagonal model.
pub fn sample_goe_eigenvalues<R: Rng + ?Sized>(spec: &GoeEnsembleSpec, rng: &mut R) -> Vec<f64> {
    let (d, e) = sample_goe_tridiagonal(spec, rng);
    tridiag_eigenvalues(&d, &e).expect("implicit QL converges on tridiagonal GOE samples")
}
