//! Mean eigenvalue density of the standardized GOE (a = 1/N).

use std::f64::consts::{PI, SQRT_2};

use super::ensemble::sample_goe_eigenvalues;
use super::{DensityCurve, GoeEnsembleSpec, Provenance};
use crate::error::{domain, Error, Result};
use crate::numerics::rng::{par_chunks, RandomStream, DEFAULT_CHUNK};
use crate::numerics::special::{airy_ai_integral_tail, airy_pair, hermite_psi_all};

pub const EXACT_MAX_N: usize = 40;

fn check_exact(n: usize, t: f64) -> Result<()> {
    if n < 2 || n > EXACT_MAX_N || n % 2 == 1 {
        return Err(Error::Unsupported(format!(
            "exact density needs even N in 2..={EXACT_MAX_N} (got {n}); use mc_density"
        )));
    }
    if !t.is_finite() {
        return domain("density_exact: non-finite t");
    }
    Ok(())
}

/// Returns (ln prefactor, bracket) with ρ_N(t) = exp(ln prefactor) · bracket.
///
/// In the oscillator variable x = √N t the GOE(N, 1) density for even N is
/// Σ_{k<N} φ_k(x)² + √(N/2) φ_{N-1}(x) ∫_0^x φ_N, the Christoffel-Darboux
/// kernel plus the skew correction.
fn exact_parts(n: usize, t: f64) -> (f64, f64) {
    let nf = n as f64;
    let x = nf.sqrt() * t.abs();
    let psi = hermite_psi_all(n, x);
    let s1: f64 = psi[..n].iter().map(|p| p * p).sum();
    let g = (-0.5 * x * x).exp();
    // D_m = ∫_0^x φ_m for even m
    let mut d = PI.powf(-0.25) * (PI / 2.0).sqrt() * libm::erf(x / SQRT_2);
    let mut m = 0;
    while m < n {
        let phi_next = psi[m + 1] * g;
        d = (((m + 1) as f64 / 2.0).sqrt() * d - phi_next) / ((m + 2) as f64 / 2.0).sqrt();
        m += 2;
    }
    let c = (nf / 2.0).sqrt() * psi[n - 1] * d;
    (-0.5 * x * x - 0.5 * nf.ln(), g * s1 + c)
}

/// Exact mean density ρ_N(t) of the standardized GOE, N even, 2 ≤ N ≤ 40.
pub fn density_exact(n: usize, t: f64) -> Result<f64> {
    check_exact(n, t)?;
    let (lp, br) = exact_parts(n, t);
    Ok((lp.exp() * br).max(0.0))
}

/// ln ρ_N(t), usable far in the tails where ρ_N underflows.
pub fn ln_density_exact(n: usize, t: f64) -> Result<f64> {
    check_exact(n, t)?;
    if (n as f64).sqrt() * t.abs() > 1e6 {
        return domain(format!("ln_density_exact: |t| = {} too large", t.abs()));
    }
    let (lp, br) = exact_parts(n, t);
    if !(br > 0.0) {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(lp + br.ln())
}

/// ψ_+(t) = (t/2)√(t²−2) − ln[(t + √(t²−2))/√2] for |t| ≥ √2, evaluated at |t|.
pub fn psi_plus(t: f64) -> Result<f64> {
    let t = t.abs();
    if t < SQRT_2 {
        return domain(format!("psi_plus needs |t| >= sqrt(2), got {t}"));
    }
    let r = (t * t - 2.0).max(0.0).sqrt();
    Ok(0.5 * t * r - ((t + r) / SQRT_2).ln())
}

/// Large-N density: the semicircle inside the bulk, the exponentially small
/// tail outside. The edge |t| = √2 itself is excluded.
pub fn density_asymptotic(n: usize, t: f64) -> Result<f64> {
    if n == 0 || !t.is_finite() {
        return domain("density_asymptotic needs N >= 1 and finite t");
    }
    let u = t.abs();
    if (u - SQRT_2).abs() < 1e-6 {
        return Err(Error::RegimeBoundary(format!(
            "t = {t} is at the spectral edge; use density_edge"
        )));
    }
    if u < SQRT_2 {
        return Ok((2.0 - u * u).sqrt() / PI);
    }
    let nf = n as f64;
    let r = (u * u - 2.0).sqrt();
    Ok((-nf * psi_plus(u)?).exp() / (2.0 * (PI * nf).sqrt() * r.sqrt() * (u + r).sqrt()))
}

/// Edge-scaling density ρ_edge(ζ) = Ai'(ζ)² − ζ Ai(ζ)² + ½ Ai(ζ)(1 − ∫_ζ^∞ Ai).
pub fn density_edge(zeta: f64) -> f64 {
    let (ai, aip) = airy_pair(zeta);
    let v = aip * aip - zeta * ai * ai + 0.5 * ai * (1.0 - airy_ai_integral_tail(zeta));
    v.max(0.0)
}

/// Histogram estimate of ρ_{n,a} on `bins` equal bins over [lo, hi].
///
/// Each matrix contributes the fraction of its eigenvalues in a bin; values
/// and standard errors are the sample mean and its standard error divided by
/// the bin width.
pub fn mc_density(
    spec: &GoeEnsembleSpec,
    lo: f64,
    hi: f64,
    bins: usize,
    n_samples: usize,
    stream: &RandomStream,
) -> Result<DensityCurve> {
    if !(hi > lo) || bins == 0 || n_samples < 2 {
        return domain("mc_density needs lo < hi, bins >= 1, n_samples >= 2");
    }
    let width = (hi - lo) / bins as f64;
    let inv_n = 1.0 / spec.n as f64;
    let partial = par_chunks(stream, n_samples, DEFAULT_CHUNK, |rng, len| {
        let mut s = vec![0.0; bins];
        let mut s2 = vec![0.0; bins];
        let mut counts = vec![0usize; bins];
        for _ in 0..len {
            counts.iter_mut().for_each(|c| *c = 0);
            for l in sample_goe_eigenvalues(spec, rng) {
                let k = ((l - lo) / width).floor();
                if k >= 0.0 && (k as usize) < bins {
                    counts[k as usize] += 1;
                }
            }
            for k in 0..bins {
                let f = counts[k] as f64 * inv_n;
                s[k] += f;
                s2[k] += f * f;
            }
        }
        (s, s2)
    });
    let mut s = vec![0.0; bins];
    let mut s2 = vec![0.0; bins];
    for (a, b) in &partial {
        for k in 0..bins {
            s[k] += a[k];
            s2[k] += b[k];
        }
    }
    let m = n_samples as f64;
    let mut values = Vec::with_capacity(bins);
    let mut errs = Vec::with_capacity(bins);
    for k in 0..bins {
        let mean = s[k] / m;
        let var = ((s2[k] - m * mean * mean) / (m - 1.0)).max(0.0);
        values.push(mean / width);
        errs.push((var / m).sqrt() / width);
    }
    let centers = (0..bins).map(|k| lo + (k as f64 + 0.5) * width).collect();
    DensityCurve::new(centers, values, Some(errs), Provenance::Mc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quad::{integrate, Domain, QuadratureSpec};

    #[test]
    fn exact_density_n2_closed_form() {
        // GOE(2, 1/2): ρ(t) from the two-point joint density, integrated by quadrature
        let z2 = (crate::goe::selberg_log_z(2, 0.5).unwrap()).exp();
        let spec = QuadratureSpec::new(1e-13, 1e-12);
        for t in [0.0, 0.4, 1.3, 2.5] {
            let v = integrate(|y| (-(t * t + y * y)).exp() * (t - y).abs(), Domain::Full, &spec).unwrap().value / z2;
            let e = density_exact(2, t).unwrap();
            assert!((v - e).abs() < 1e-10, "t = {t}: {v} vs {e}");
        }
    }

    #[test]
    fn exact_density_normalized_and_even() {
        let spec = QuadratureSpec::new(1e-12, 1e-11);
        for n in (2..=20).step_by(2) {
            let r = integrate(|t| density_exact(n, t).unwrap(), Domain::Full, &spec).unwrap();
            assert!((r.value - 1.0).abs() < 1e-8, "N = {n}: {}", r.value);
            let a = density_exact(n, 0.7).unwrap();
            let b = density_exact(n, -0.7).unwrap();
            assert!((a - b).abs() <= 1e-12 * a);
        }
        assert!(density_exact(3, 0.0).is_err());
        assert!(density_exact(42, 0.0).is_err());
    }

    #[test]
    fn exact_density_nonnegative() {
        for i in 0..=6000 {
            let t = -3.0 + i as f64 * 1e-3;
            assert!(density_exact(8, t).unwrap() >= 0.0);
        }
    }

    #[test]
    fn ln_density_in_far_tail() {
        let a = ln_density_exact(10, 1.2).unwrap();
        assert!((a - density_exact(10, 1.2).unwrap().ln()).abs() < 1e-12);
        let far = ln_density_exact(20, 30.0).unwrap();
        assert!(far.is_finite() && far < -8000.0);
    }

    #[test]
    fn asymptotic_density() {
        assert!((density_asymptotic(7, 0.0).unwrap() - SQRT_2 / PI).abs() < 1e-15);
        assert!(psi_plus(SQRT_2).unwrap().abs() < 1e-15);
        assert!(matches!(density_asymptotic(10, SQRT_2), Err(Error::RegimeBoundary(_))));
        assert_eq!(density_asymptotic(10, 1.7).unwrap(), density_asymptotic(10, -1.7).unwrap());
    }

    #[test]
    fn asymptotic_tail_tracks_exact_density() {
        // the tail formula becomes exact as N grows at fixed t > √2
        let r = density_asymptotic(40, 1.7).unwrap() / density_exact(40, 1.7).unwrap();
        assert!((r - 1.0).abs() < 0.2, "{r}");
    }

    #[test]
    fn edge_density_limits() {
        let (ai6, _) = airy_pair(6.0);
        assert!((density_edge(6.0) / (0.5 * ai6) - 1.0).abs() < 0.05);
        assert!((density_edge(-8.0) / (8f64.sqrt() / PI) - 1.0).abs() < 0.05);
    }

    #[test]
    fn edge_rescaled_finite_n_approaches_edge_density() {
        // the relative mismatch at ζ = 0 decays like N^{-1/3}
        let mismatch = |n: usize| {
            let nf = n as f64;
            let scaled = nf.powf(1.0 / 3.0) / SQRT_2 * density_exact(n, SQRT_2).unwrap();
            (scaled / density_edge(0.0) - 1.0).abs()
        };
        let e: Vec<f64> = [10, 20, 30, 40].iter().map(|&n| mismatch(n)).collect();
        assert!(e.windows(2).all(|w| w[1] < w[0]), "{e:?}");
        assert!(e[3] < 0.15, "{e:?}");
        let c10 = e[0] * 10f64.powf(1.0 / 3.0);
        let c40 = e[3] * 40f64.powf(1.0 / 3.0);
        assert!((c10 / c40 - 1.0).abs() < 0.1, "{c10} {c40}");
    }

    #[test]
    fn mc_density_matches_exact_n2() {
        let spec = GoeEnsembleSpec::new(2, 0.5).unwrap();
        let c = mc_density(&spec, -0.02, 0.02, 2, 200_000, &RandomStream::new(9, 0)).unwrap();
        let exact = density_exact(2, 0.01).unwrap();
        let z = (c.values[1] - exact).abs() / c.stderr.as_ref().unwrap()[1];
        assert!(z < 3.0, "{} vs {exact}", c.values[1]);
    }
}
