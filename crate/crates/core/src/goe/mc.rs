//! Monte-Carlo functionals of GOE spectra.
//!
//! Spectra are drawn from the tridiagonal model, chunked over a
//! [`RandomStream`], so every estimate depends only on (seed, stream id,
//! sample count) and not on the number of worker threads.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::density::density_exact;
use super::ensemble::sample_goe_eigenvalues;
use super::{selberg_log_z, GoeEnsembleSpec, McEstimate};
use crate::error::{domain, Error, Result};
use crate::numerics::quad::{gauss_legendre, integrate, Domain, QuadratureSpec};
use crate::numerics::rng::{par_samples, RandomStream, DEFAULT_CHUNK};

/// Estimate E{(1/n) Σ_i g(λ_i)} = ∫ g ρ_{n,a}.
pub fn mc_spectral_functional<G>(spec: &GoeEnsembleSpec, g: G, n_samples: usize, stream: &RandomStream) -> McEstimate
where
    G: Fn(f64) -> f64 + Sync,
{
    let inv_n = 1.0 / spec.n as f64;
    let xs = par_samples(stream, n_samples, DEFAULT_CHUNK, |rng| {
        sample_goe_eigenvalues(spec, rng).iter().map(|&l| g(l)).sum::<f64>() * inv_n
    });
    McEstimate::from_samples(&xs)
}

/// Estimate E{g(λ_(k))} for the k-th largest eigenvalue (k = 1 is λ_max).
pub fn mc_order_statistic_functional<G>(
    spec: &GoeEnsembleSpec,
    k: usize,
    g: G,
    n_samples: usize,
    stream: &RandomStream,
) -> Result<McEstimate>
where
    G: Fn(f64) -> f64 + Sync,
{
    if k == 0 || k > spec.n {
        return domain(format!("order statistic k = {k} outside 1..={}", spec.n));
    }
    let n = spec.n;
    let xs = par_samples(stream, n_samples, DEFAULT_CHUNK, |rng| g(sample_goe_eigenvalues(spec, rng)[n - k]));
    Ok(McEstimate::from_samples(&xs))
}

/// Mean of positive samples carried in log space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogMcEstimate {
    /// ln of the sample mean.
    pub ln_mean: f64,
    /// Standard error of the mean divided by the mean; also the standard
    /// error of `ln_mean` to first order.
    pub rel_stderr: f64,
    pub n_samples: usize,
}

impl LogMcEstimate {
    /// From the logarithms of positive samples.
    pub fn from_log_samples(ls: &[f64]) -> Self {
        let n = ls.len();
        let m = ls.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if n == 0 || m == f64::NEG_INFINITY {
            return Self { ln_mean: f64::NEG_INFINITY, rel_stderr: f64::NAN, n_samples: n };
        }
        let xs: Vec<f64> = ls.iter().map(|l| (l - m).exp()).collect();
        let e = McEstimate::from_samples(&xs);
        Self { ln_mean: m + e.mean.ln(), rel_stderr: e.stderr / e.mean, n_samples: n }
    }

    /// Sample mean on the linear scale (may overflow to ∞).
    pub fn mean(&self) -> f64 {
        self.ln_mean.exp()
    }
}

/// Which part of the real line the determinant integral runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetRegion {
    /// All t: ∫ w(t) |det(t − H)| dt.
    All,
    /// t above the largest eigenvalue, where det(t − H) > 0.
    AboveMax,
    /// t between the k-th and (k−1)-th largest eigenvalues (k ≥ 1), where
    /// exactly k − 1 eigenvalues exceed t. `Gap(1)` is `AboveMax` and
    /// `Gap(n + 1)` lies below the smallest eigenvalue; other k give an
    /// empty region.
    Gap(usize),
}

/// Gaussian weight w(t) = exp(−c2 t² + c1 t), c2 > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussWeight {
    pub c2: f64,
    pub c1: f64,
}

impl GaussWeight {
    pub fn new(c2: f64, c1: f64) -> Result<Self> {
        if !(c2 > 0.0) || !c2.is_finite() || !c1.is_finite() {
            return domain(format!("Gaussian weight needs c2 > 0 (got {c2}, {c1})"));
        }
        Ok(Self { c2, c1 })
    }

    fn ln(&self, t: f64) -> f64 {
        -self.c2 * t * t + self.c1 * t
    }
}

const GL_NODES: usize = 10;
/// Outer panels stop once the log-integrand is this far below its maximum.
const TAIL_DROP: f64 = 40.0;
const MAX_PANELS: usize = 1_000_000;

fn gl_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(GL_NODES))
}

/// ln |Π_i (t − λ_i)| by a running product with occasional renormalization.
pub(crate) fn ln_abs_det(t: f64, eigs: &[f64]) -> f64 {
    let mut p = 1.0f64;
    let mut acc = 0.0;
    for &l in eigs {
        p *= t - l;
        let a = p.abs();
        if !(1e-200..=1e200).contains(&a) {
            if a == 0.0 {
                return f64::NEG_INFINITY;
            }
            acc += a.ln();
            p = 1.0;
        }
    }
    acc + p.abs().ln()
}

/// Running log-sum-exp.
#[derive(Clone, Copy)]
struct LogSum {
    max: f64,
    sum: f64,
}

impl LogSum {
    fn new() -> Self {
        Self { max: f64::NEG_INFINITY, sum: 0.0 }
    }

    fn add(&mut self, l: f64) {
        if l == f64::NEG_INFINITY {
            return;
        }
        if l > self.max {
            self.sum = self.sum * (self.max - l).exp() + 1.0;
            self.max = l;
        } else {
            self.sum += (l - self.max).exp();
        }
    }

    fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.sum.ln()
        }
    }
}

/// Add one panel's Gauss-Legendre terms to `total`; returns the largest,
/// first and last log-integrand values at the nodes.
fn panel(a: f64, b: f64, w: &GaussWeight, eigs: &[f64], total: &mut LogSum) -> (f64, f64, f64) {
    let (x, wt) = gl_rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let lh = half.abs().ln();
    let mut mx = f64::NEG_INFINITY;
    let mut first = 0.0;
    let mut last = 0.0;
    for i in 0..GL_NODES {
        let t = mid + half * x[i];
        let f = w.ln(t) + ln_abs_det(t, eigs);
        if i == 0 {
            first = f;
        }
        last = f;
        mx = mx.max(f);
        total.add(f + wt[i].ln() + lh);
    }
    (mx, first, last)
}

/// ln ∫ w(t) |Π_i (t − λ_i)| dt over `region` for one sorted spectrum.
///
/// Panels are split at the eigenvalues, where the integrand has kinks;
/// beyond the spectrum the log-integrand is concave and panels are added
/// outwards until it has fallen [`TAIL_DROP`] nats below its running maximum.
pub fn ln_det_integral(eigs: &[f64], w: &GaussWeight, region: DetRegion) -> f64 {
    let h = 0.25 / w.c2.sqrt();
    let m = eigs.len();
    let mut total = LogSum::new();
    let mut peak = f64::NEG_INFINITY;
    let (lo, hi) = match (eigs.first(), eigs.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => {
            let c = w.c1 / (2.0 * w.c2);
            (c, c)
        }
    };
    let inner = |a: f64, b: f64, total: &mut LogSum, peak: &mut f64| {
        if b <= a {
            return;
        }
        let k = ((b - a) / h).ceil().max(1.0) as usize;
        let step = (b - a) / k as f64;
        for j in 0..k {
            let (mx, _, _) = panel(a + j as f64 * step, a + (j + 1) as f64 * step, w, eigs, total);
            *peak = peak.max(mx);
        }
    };
    let outward = |start: f64, dir: f64, total: &mut LogSum, peak: &mut f64| {
        let mut a = start;
        for _ in 0..MAX_PANELS {
            let b = a + dir * h;
            let (mx, first, last) = panel(a.min(b), a.max(b), w, eigs, total);
            *peak = peak.max(mx);
            let (near, far) = if dir > 0.0 { (first, last) } else { (last, first) };
            if far <= near && mx < *peak - TAIL_DROP {
                break;
            }
            a = b;
        }
    };
    let (up, inside, down) = match region {
        DetRegion::All => (true, None, true),
        DetRegion::AboveMax | DetRegion::Gap(1) => (true, None, false),
        DetRegion::Gap(k) if k == m + 1 => (false, None, true),
        DetRegion::Gap(k) if k >= 2 && k <= m => (false, Some(m - k), false),
        DetRegion::Gap(_) => return f64::NEG_INFINITY,
    };
    if region == DetRegion::All {
        for pair in eigs.windows(2) {
            inner(pair[0], pair[1], &mut total, &mut peak);
        }
    }
    if let Some(i) = inside {
        inner(eigs[i], eigs[i + 1], &mut total, &mut peak);
    }
    if up {
        outward(hi, 1.0, &mut total, &mut peak);
    }
    if down {
        outward(lo, -1.0, &mut total, &mut peak);
    }
    total.value()
}

/// Estimate E{∫ w(t) |det(t − H)| θ_region dt} over H ~ GOE(spec) in log
/// space.
pub fn mc_det_functional(
    spec: &GoeEnsembleSpec,
    w: &GaussWeight,
    region: DetRegion,
    n_samples: usize,
    stream: &RandomStream,
) -> LogMcEstimate {
    let ls = par_samples(stream, n_samples, DEFAULT_CHUNK, |rng| {
        ln_det_integral(&sample_goe_eigenvalues(spec, rng), w, region)
    });
    LogMcEstimate::from_log_samples(&ls)
}

/// Exact mean density ρ_{n,a}(t) where available: even n ≤ 40 by rescaling
/// the standardized density, n = 1 and n = 3 by direct quadrature.
pub fn density_exact_general(n: usize, a: f64, t: f64) -> Result<f64> {
    let s = (a * n as f64).sqrt();
    match n {
        1 => Ok((-t * t / (2.0 * a)).exp() / (2.0 * std::f64::consts::PI * a).sqrt()),
        3 => {
            // ρ(t) = Z_3^{-1} ∫∫ e^{-(t²+x²+y²)/2a} |Δ(t, x, y)| dx dy
            let lz = selberg_log_z(3, a)?;
            let spec = QuadratureSpec::new(1e-14, 1e-11).with_map_scale(a.sqrt());
            let outer = integrate(
                |x| {
                    integrate(
                        |y| {
                            (-(t * t + x * x + y * y) / (2.0 * a) - lz).exp()
                                * ((t - x) * (t - y) * (x - y)).abs()
                        },
                        Domain::Full,
                        &spec,
                    )
                    .map(|r| r.value)
                    .unwrap_or(f64::NAN)
                },
                Domain::Full,
                &spec,
            )?;
            Ok(outer.value)
        }
        _ if n % 2 == 0 => Ok(density_exact(n, t / s)? / s),
        _ => Err(Error::Unsupported(format!("no exact density for n = {n}"))),
    }
}

/// Both sides of E_{n−1}|det(t − H̃)| = (Z_n/Z_{n−1}) e^{t²/2a} ρ_{n,a}(t):
/// the left side by Monte Carlo over GOE(n−1, a), the right side exactly.
pub fn check_goe5(
    n: usize,
    a: f64,
    t: f64,
    n_samples: usize,
    stream: &RandomStream,
) -> Result<(McEstimate, f64)> {
    if n < 2 {
        return domain("check_goe5 needs n >= 2");
    }
    let spec = GoeEnsembleSpec::new(n - 1, a)?;
    let xs = par_samples(stream, n_samples, DEFAULT_CHUNK, |rng| {
        ln_abs_det(t, &sample_goe_eigenvalues(&spec, rng)).exp()
    });
    let lhs = McEstimate::from_samples(&xs);
    let rho = density_exact_general(n, a, t)?;
    let rhs = (selberg_log_z(n, a)? - selberg_log_z(n - 1, a)? + t * t / (2.0 * a)).exp() * rho;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quad::integrate_with_breaks;
    use std::f64::consts::PI;

    #[test]
    fn spectral_functional_identities() {
        let s = RandomStream::new(5, 0);
        let spec = GoeEnsembleSpec::new(4, 1.0).unwrap();
        let one = mc_spectral_functional(&spec, |_| 1.0, 1000, &s);
        assert_eq!(one.mean, 1.0);
        assert_eq!(one.stderr, 0.0);
        let m2 = mc_spectral_functional(&spec, |t| t * t, 100_000, &s);
        assert!(m2.z_score(2.5) < 3.0, "{m2:?}");
    }

    #[test]
    fn order_statistics() {
        let s = RandomStream::new(6, 0);
        let spec = GoeEnsembleSpec::new(1, 1.0).unwrap();
        let half = mc_order_statistic_functional(&spec, 1, |t| (t <= 0.0) as u8 as f64, 100_000, &s).unwrap();
        assert!(half.z_score(0.5) < 3.0);
        let spec = GoeEnsembleSpec::new(3, 1.0).unwrap();
        assert!(mc_order_statistic_functional(&spec, 4, |_| 1.0, 10, &s).is_err());
        assert_eq!(mc_order_statistic_functional(&spec, 2, |_| 1.0, 10, &s).unwrap().mean, 1.0);
        let mut prev = 0.0;
        for t0 in [-1.0, 0.0, 0.5, 1.0, 2.0] {
            let f = mc_order_statistic_functional(&spec, 1, |t| (t <= t0) as u8 as f64, 5000, &s).unwrap().mean;
            assert!(f >= prev);
            prev = f;
        }
    }

    #[test]
    fn order_statistics_sum_to_spectral_functional() {
        let spec = GoeEnsembleSpec::new(4, 0.25).unwrap();
        let s = RandomStream::new(7, 0);
        let g = |t: f64| (-t * t).exp();
        let total: f64 = (1..=4)
            .map(|k| mc_order_statistic_functional(&spec, k, g, 20_000, &s).unwrap().mean)
            .sum();
        let sp = mc_spectral_functional(&spec, g, 20_000, &s);
        // same stream: the sum over k is the per-sample spectral sum exactly
        assert!((total - 4.0 * sp.mean).abs() < 1e-12);
    }

    #[test]
    fn det_integral_matches_quadrature() {
        let eigs = [-0.7, -0.1, 0.4, 1.3];
        let w = GaussWeight::new(1.5, 0.8).unwrap();
        let spec = QuadratureSpec::new(1e-14, 1e-12);
        let f = |t: f64| (-1.5 * t * t + 0.8 * t).exp() * eigs.iter().map(|l| (t - l).abs()).product::<f64>();
        let all = integrate(f, Domain::Full, &spec).unwrap().value;
        assert!((ln_det_integral(&eigs, &w, DetRegion::All) - all.ln()).abs() < 1e-9);
        let above = integrate(f, Domain::UpperHalf(1.3), &spec).unwrap().value;
        assert!((ln_det_integral(&eigs, &w, DetRegion::AboveMax) - above.ln()).abs() < 1e-9);
        assert_eq!(ln_det_integral(&eigs, &w, DetRegion::Gap(1)), ln_det_integral(&eigs, &w, DetRegion::AboveMax));
        let gap2 = integrate_with_breaks(f, 0.4, 1.3, &[], &spec).unwrap().value;
        assert!((ln_det_integral(&eigs, &w, DetRegion::Gap(2)) - gap2.ln()).abs() < 1e-9);
        let below = integrate(f, Domain::LowerHalf(-0.7), &spec).unwrap().value;
        assert!((ln_det_integral(&eigs, &w, DetRegion::Gap(5)) - below.ln()).abs() < 1e-9);
        let parts: f64 = (1..=5).map(|k| ln_det_integral(&eigs, &w, DetRegion::Gap(k)).exp()).sum();
        assert!((parts.ln() - all.ln()).abs() < 1e-9);
        assert_eq!(ln_det_integral(&eigs, &w, DetRegion::Gap(6)), f64::NEG_INFINITY);
    }

    #[test]
    fn det_integral_far_peak() {
        // weight peaked far outside the spectrum
        let eigs = [0.0];
        let w = GaussWeight::new(50.0, 600.0).unwrap();
        let spec = QuadratureSpec::new(1e-300, 1e-12).with_map_scale(0.1);
        let f = |t: f64| (-50.0 * t * t + 600.0 * t - 1790.0).exp() * t.abs();
        let v = integrate(f, Domain::Full, &spec).unwrap().value.ln() + 1790.0;
        assert!((ln_det_integral(&eigs, &w, DetRegion::All) - v).abs() < 1e-9);
    }

    #[test]
    fn log_estimate() {
        let e = LogMcEstimate::from_log_samples(&[1000.0, 1000.0 + 2f64.ln()]);
        assert!((e.ln_mean - (1000.0 + 1.5f64.ln())).abs() < 1e-12);
        assert!((e.rel_stderr - 0.5 / 1.5).abs() < 1e-12);
    }

    #[test]
    fn goe5_two_by_two_closed_form() {
        let (lhs, rhs) = check_goe5(2, 1.0, 0.0, 200_000, &RandomStream::new(8, 0)).unwrap();
        let want = (2.0 / PI).sqrt();
        assert!((rhs - want).abs() < 1e-12, "{rhs}");
        assert!(lhs.z_score(want) < 3.0, "{lhs:?}");
    }

    #[test]
    fn goe5_odd_sizes() {
        let (lhs, rhs) = check_goe5(3, 1.0, 0.6, 200_000, &RandomStream::new(8, 1)).unwrap();
        assert!(lhs.z_score(rhs) < 3.0, "{lhs:?} {rhs}");
    }
}
