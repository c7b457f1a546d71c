//! Mean numbers of stationary points, minima and index-k saddles of
//! isotropic Gaussian fields on the sphere |x|² = R², N-dimensional.
//!
//! Everything is driven by the single parameter
//! B = (F'' − F'/R²)/(F'' + F'/R²) ∈ (−1, 1). The exact counts are
//!
//! * E N_s = 4N ((1+B)/(1−B))^{N/2} √(1−B) · G(B), G(B) = ∫_0^∞ e^{−NBt²/2} ρ_N(t) dt,
//! * E N_m = 2 ((1+B)/(1−B))^{N/2} √(1−B) · 𝒢(B), 𝒢(B) = ∫ e^{−NBt²/2} F_N'(t) dt,
//!
//! with ρ_N the standardized GOE density and F_N the law of its largest
//! eigenvalue. Near B = 0 two crossovers appear: the edge window
//! κ = −2N^{1/3}B and (for stationary points only) the bulk window γ = −NB.

use std::f64::consts::{LN_2, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::goe::{
    density_edge, lambda_max_density_exact, ln_density_exact, mc_det_functional, mc_order_statistic_functional,
    mc_spectral_functional, selberg_log_z, DensitySource, DetRegion, GaussWeight, GoeEnsembleSpec,
};
use crate::numerics::quad::{integrate, integrate_with_breaks, ln_integrate, Domain, QuadratureSpec};
use crate::numerics::rng::RandomStream;
use crate::numerics::special::{bessel_i0_minus_i1_scaled, bessel_i_scaled, ln_gamma};
use crate::report::{CountReport, LogValue, Method, Regime};
use crate::tracy_widom::{ln_tail_const_a, Tw1Evaluator};

/// |B| N^{1/3} at or above which the large-N asymptotics apply.
pub const ASYMPTOTIC_WINDOW: f64 = 5.0;
/// |B| N^{1/3} at or below which the edge crossover applies.
pub const EDGE_WINDOW: f64 = 2.0;
/// |B| N at or below which the bulk crossover applies.
pub const BULK_WINDOW: f64 = 3.0;

/// Log-integrands are truncated this many nats below their maximum.
const LN_DROP: f64 = 40.0;

/// Samples used when an exact evaluation degrades to Monte Carlo.
pub const FALLBACK_SAMPLES: usize = 100_000;

/// Isotropic covariance E V(x)V(x') = F(x·x') restricted to the sphere of
/// radius R; `f1d` = F'(R²), `f2d` = F''(R²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsotropicSphereSpec {
    pub n: usize,
    pub r: f64,
    pub f1d: f64,
    pub f2d: f64,
}

impl IsotropicSphereSpec {
    pub fn new(n: usize, r: f64, f1d: f64, f2d: f64) -> Result<Self> {
        if n < 2 || !(r > 0.0) || !r.is_finite() {
            return domain(format!("sphere needs N >= 2 and R > 0 (got N = {n}, R = {r})"));
        }
        if !(f1d > 0.0) || !(f2d > 0.0) {
            return domain(format!("covariance needs F' > 0 and F'' > 0 (got {f1d}, {f2d})"));
        }
        Ok(Self { n, r, f1d, f2d })
    }

    pub fn b_param(&self) -> Result<f64> {
        if !(self.f1d > 0.0) || !(self.f2d > 0.0) {
            return domain("covariance needs F' > 0 and F'' > 0");
        }
        let s = self.f1d / (self.r * self.r);
        Ok((self.f2d - s) / (self.f2d + s))
    }
}

/// Spherical p-spin model: V = −Σ J_{i1..ip} x_{i1}..x_{ip} − Σ h_i x_i on
/// |x|² = N, with E J² = J²/(p N^{p−1}) and E h² = σ².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PSpinSpec {
    pub p: usize,
    pub j: f64,
    pub sigma: f64,
    pub n: usize,
}

impl PSpinSpec {
    pub fn new(p: usize, j: f64, sigma: f64, n: usize) -> Result<Self> {
        if p < 2 || n < 2 || !(j > 0.0) || !(sigma >= 0.0) || !j.is_finite() || !sigma.is_finite() {
            return domain(format!("p-spin needs p >= 2, N >= 2, J > 0, sigma >= 0 (got {p}, {j}, {sigma}, {n})"));
        }
        Ok(Self { p, j, sigma, n })
    }

    /// The field strength giving a prescribed B ∈ (−1, (p−2)/p].
    pub fn with_b(p: usize, j: f64, b: f64, n: usize) -> Result<Self> {
        let pf = p as f64;
        let s2 = j * j * (pf - 2.0 - b * pf) / (1.0 + b);
        if !(b > -1.0) || s2 < -1e-15 {
            return domain(format!("B = {b} not reachable for p = {p}"));
        }
        Self::new(p, j, s2.max(0.0).sqrt(), n)
    }

    /// f(u) = J²u^p/p + σ²u, so that E V(x)V(x') = N f(x·x'/N).
    pub fn f(&self, u: f64) -> f64 {
        self.j * self.j * u.powi(self.p as i32) / self.p as f64 + self.sigma * self.sigma * u
    }

    pub fn to_isotropic(&self) -> IsotropicSphereSpec {
        let (j2, s2, pf, nf) = (self.j * self.j, self.sigma * self.sigma, self.p as f64, self.n as f64);
        IsotropicSphereSpec { n: self.n, r: nf.sqrt(), f1d: j2 + s2, f2d: j2 * (pf - 1.0) / nf }
    }

    /// B = (J²(p−2) − σ²)/(J²p + σ²).
    pub fn b_param(&self) -> Result<f64> {
        let (j2, s2, pf) = (self.j * self.j, self.sigma * self.sigma, self.p as f64);
        Ok((j2 * (pf - 2.0) - s2) / (j2 * pf + s2))
    }
}

/// Anything that fixes the parameter B.
pub trait SphereModel {
    fn b_param(&self) -> Result<f64>;
}

impl SphereModel for IsotropicSphereSpec {
    fn b_param(&self) -> Result<f64> {
        IsotropicSphereSpec::b_param(self)
    }
}

impl SphereModel for PSpinSpec {
    fn b_param(&self) -> Result<f64> {
        PSpinSpec::b_param(self)
    }
}

pub fn b_param<S: SphereModel>(spec: &S) -> Result<f64> {
    spec.b_param()
}

/// Critical field σ_c = J√(p−2) separating B > 0 from B < 0.
pub fn sigma_c(p: usize, j: f64) -> f64 {
    j * (p as f64 - 2.0).max(0.0).sqrt()
}

/// ln of the hemisphere area R^{N−1} π^{N/2}/Γ(N/2).
pub fn ln_sphere_area(n: usize, r: f64) -> Result<f64> {
    if n < 2 || !(r > 0.0) {
        return domain("sphere_area needs N >= 2 and R > 0");
    }
    let nf = n as f64;
    Ok((nf - 1.0) * r.ln() + 0.5 * nf * PI.ln() - ln_gamma(0.5 * nf)?)
}

pub fn sphere_area(n: usize, r: f64) -> Result<f64> {
    Ok(ln_sphere_area(n, r)?.exp())
}

/// Window label for (N, B): bulk, then edge, then the side of B.
pub fn regime_of(n: usize, b: f64) -> Regime {
    let nf = n as f64;
    if b.abs() * nf <= BULK_WINDOW {
        Regime::Bulk
    } else if b.abs() * nf.cbrt() <= EDGE_WINDOW {
        Regime::Edge
    } else if b < 0.0 {
        Regime::BNeg
    } else {
        Regime::BPos
    }
}

/// Cumulative complexity ½ ln((1+B)/(1−B)) of stationary points.
pub fn stationary_complexity(b: f64) -> f64 {
    0.5 * ((1.0 + b) / (1.0 - b)).ln()
}

/// Complexity ½ ln((1+B)/(1−B)) − B of minima.
pub fn minima_complexity(b: f64) -> f64 {
    stationary_complexity(b) - b
}

fn check_nb(n: usize, b: f64) -> Result<()> {
    if n < 2 {
        return domain(format!("N = {n}; need N >= 2"));
    }
    if !(b > -1.0 && b < 1.0) {
        return domain(format!("B = {b} outside (-1, 1)"));
    }
    Ok(())
}

/// ln[((1+B)/(1−B))^{N/2} √(1−B)].
fn ln_common_prefactor(n: usize, b: f64) -> f64 {
    0.5 * n as f64 * ((1.0 + b) / (1.0 - b)).ln() + 0.5 * (1.0 - b).ln()
}

/// ln(Z_{N−1}/Z_N) at a = 1/N.
fn ln_z_ratio(n: usize) -> Result<f64> {
    let a = 1.0 / n as f64;
    Ok(selberg_log_z(n - 1, a)? - selberg_log_z(n, a)?)
}

fn mc_stream(source: &DensitySource) -> Option<(usize, RandomStream)> {
    match *source {
        DensitySource::Exact => None,
        DensitySource::Mc { n_samples, stream } => Some((n_samples, stream)),
    }
}

/// ln G(B) by quadrature of the exact density (N even, N ≤ 40).
pub fn ln_g_exact(n: usize, b: f64) -> Result<LogValue> {
    check_nb(n, b)?;
    ln_density_exact(n, 0.0)?;
    let nf = n as f64;
    let g = |t: f64| ln_density_exact(n, t).unwrap_or(f64::NEG_INFINITY) - 0.5 * nf * b * t * t;
    let reach = if b < 0.0 { (2.0 / (1.0 - b * b)).sqrt() } else { SQRT_2 };
    let l = 1.5 * reach + 1.0;
    let spec = QuadratureSpec::new(1e-15, 1e-12).with_max_subdivisions(20_000);
    let r = ln_integrate(g, -l, l, 0.01, LN_DROP, &[0.0], &spec)?;
    Ok(LogValue::new(r.ln_value - LN_2, r.rel_err))
}

/// ln G(B) by Monte Carlo: the spectral average ½ E (1/N) Σ e^{−NBλ²/2}
/// for B ≥ 0, the determinant form ½ (Z_{N−1}/Z_N) E ∫ e^{−N(1+B)t²/2}
/// |det(t − H̃)| dt over H̃ ~ GOE(N−1, 1/N) for B < 0, where the spectral
/// average is dominated by rare large eigenvalues.
pub fn ln_g_mc(n: usize, b: f64, n_samples: usize, stream: &RandomStream) -> Result<LogValue> {
    check_nb(n, b)?;
    let nf = n as f64;
    if b >= 0.0 {
        let spec = GoeEnsembleSpec::standardized(n)?;
        let e = mc_spectral_functional(&spec, |l| (-0.5 * nf * b * l * l).exp(), n_samples, stream);
        Ok(LogValue::new(e.mean.ln() - LN_2, e.stderr / e.mean))
    } else {
        let spec = GoeEnsembleSpec::new(n - 1, 1.0 / nf)?;
        let w = GaussWeight::new(0.5 * nf * (1.0 + b), 0.0)?;
        let e = mc_det_functional(&spec, &w, DetRegion::All, n_samples, stream);
        Ok(LogValue::new(e.ln_mean + ln_z_ratio(n)? - LN_2, e.rel_stderr))
    }
}

/// ln of the k-th order-statistic functional 𝒢_k(B) = E e^{−NBλ_(k)²/2}
/// (λ_(1) the largest eigenvalue of GOE(N, 1/N)) by Monte Carlo. For B < 0
/// the density of λ_(k) is written as N (Z_{N−1}/Z_N) e^{−Nt²/2}
/// E[|det(t − H̃)|; exactly k − 1 eigenvalues of H̃ above t].
pub fn ln_g_order_mc(n: usize, b: f64, k: usize, n_samples: usize, stream: &RandomStream) -> Result<LogValue> {
    check_nb(n, b)?;
    if k == 0 || k > n {
        return domain(format!("index k = {k} outside 1..={n}"));
    }
    let nf = n as f64;
    if b >= 0.0 {
        let spec = GoeEnsembleSpec::standardized(n)?;
        let e = mc_order_statistic_functional(&spec, k, |l| (-0.5 * nf * b * l * l).exp(), n_samples, stream)?;
        Ok(LogValue::new(e.mean.ln(), e.stderr / e.mean))
    } else {
        let spec = GoeEnsembleSpec::new(n - 1, 1.0 / nf)?;
        let w = GaussWeight::new(0.5 * nf * (1.0 + b), 0.0)?;
        let e = mc_det_functional(&spec, &w, DetRegion::Gap(k), n_samples, stream);
        Ok(LogValue::new(e.ln_mean + nf.ln() + ln_z_ratio(n)?, e.rel_stderr))
    }
}

/// ln 𝒢(B) by quadrature of the exact λ_max density (N ≤ 4).
pub fn ln_g_minima_exact(n: usize, b: f64) -> Result<LogValue> {
    check_nb(n, b)?;
    let nf = n as f64;
    lambda_max_density_exact(n, 1.0 / nf, 0.0)?;
    let spec = QuadratureSpec::new(1e-14, 1e-10).with_map_scale(1.0 / nf.sqrt());
    let r = integrate(
        |t| {
            let d = lambda_max_density_exact(n, 1.0 / nf, t).unwrap_or(f64::NAN);
            if d == 0.0 {
                0.0
            } else {
                d * (-0.5 * nf * b * t * t).exp()
            }
        },
        Domain::Full,
        &spec,
    )?;
    Ok(LogValue::new(r.value.ln(), r.err_est / r.value))
}

/// Exact finite-N mean number of stationary points.
pub fn count_stationary_exact(n: usize, b: f64, source: &DensitySource) -> Result<CountReport> {
    check_nb(n, b)?;
    let pre = (4.0 * n as f64).ln() + ln_common_prefactor(n, b);
    let mut warnings = Vec::new();
    let (g, method) = match mc_stream(source) {
        None => match ln_g_exact(n, b) {
            Ok(g) => (g, Method::ExactQuadrature),
            Err(e @ (Error::Unsupported(_) | Error::Domain(_))) if n % 2 == 1 || n > 40 => return Err(e),
            Err(e) => {
                warnings.push(format!("quadrature failed ({e}); fell back to Monte Carlo"));
                (ln_g_mc(n, b, FALLBACK_SAMPLES, &RandomStream::new(0, 0))?, Method::McOracle)
            }
        },
        Some((ns, st)) => (ln_g_mc(n, b, ns, &st)?, Method::McOracle),
    };
    let mut r = CountReport::from_log(LogValue::new(pre + g.ln, g.err), method, regime_of(n, b))
        .with_param("N", n as f64)
        .with_param("B", b);
    r.warnings = warnings;
    Ok(r)
}

/// Exact finite-N mean number of minima. The exact source uses the
/// small-N quadrature of the λ_max density (N ≤ 4).
pub fn count_minima_exact(n: usize, b: f64, source: &DensitySource) -> Result<CountReport> {
    check_nb(n, b)?;
    let pre = LN_2 + ln_common_prefactor(n, b);
    let (g, method) = match mc_stream(source) {
        None => (ln_g_minima_exact(n, b)?, Method::ExactQuadrature),
        Some((ns, st)) => (ln_g_order_mc(n, b, 1, ns, &st)?, Method::McOracle),
    };
    Ok(CountReport::from_log(LogValue::new(pre + g.ln, g.err), method, regime_of(n, b))
        .with_param("N", n as f64)
        .with_param("B", b))
}

/// Mean number of stationary points whose Hessian has the k-th largest
/// eigenvalue as its smallest positive one, i.e. index k − 1 (k = 1 gives
/// the minima).
pub fn count_index_k(n: usize, b: f64, k: usize, n_samples: usize, stream: &RandomStream) -> Result<CountReport> {
    check_nb(n, b)?;
    let g = ln_g_order_mc(n, b, k, n_samples, stream)?;
    let pre = LN_2 + ln_common_prefactor(n, b);
    Ok(CountReport::from_log(LogValue::new(pre + g.ln, g.err), Method::McOracle, regime_of(n, b))
        .with_param("N", n as f64)
        .with_param("B", b)
        .with_param("k", k as f64))
}

/// ln of ½ e^{γ/2}[I_0(γ/2) − I_1(γ/2)], γ = −NB.
pub fn ln_g_less_bessel(b: f64, n: usize) -> Result<f64> {
    if n == 0 || !b.is_finite() {
        return domain("g_less_bessel needs N >= 1 and finite B");
    }
    let x = -0.5 * n as f64 * b;
    if x >= 0.0 {
        Ok(-LN_2 + 2.0 * x + bessel_i0_minus_i1_scaled(x).ln())
    } else {
        // I_0(x) − I_1(x) = I_0(|x|) + I_1(|x|)
        let s = bessel_i_scaled(0, -x)? + bessel_i_scaled(1, -x)?;
        Ok(-LN_2 + s.ln())
    }
}

/// The semicircle part G_< of G(B) in closed form.
pub fn g_less_bessel(b: f64, n: usize) -> Result<f64> {
    Ok(ln_g_less_bessel(b, n)?.exp())
}

/// ln of lim E N_s/(2N) at fixed γ = −NB.
pub fn ln_crossover_bulk_stationary(gamma: f64) -> Result<f64> {
    if !gamma.is_finite() {
        return domain("crossover_bulk_stationary needs finite gamma");
    }
    let x = 0.5 * gamma;
    if x >= 0.0 {
        Ok(bessel_i0_minus_i1_scaled(x).ln())
    } else {
        let s = bessel_i_scaled(0, -x)? + bessel_i_scaled(1, -x)?;
        Ok(-2.0 * x + s.ln())
    }
}

/// lim E N_s/(2N) = e^{−γ/2}[I_0(γ/2) − I_1(γ/2)] at fixed γ = −NB.
pub fn crossover_bulk_stationary(gamma: f64) -> Result<f64> {
    Ok(ln_crossover_bulk_stationary(gamma)?.exp())
}

/// Large-N mean number of stationary points: 2 for B < 0 and
/// 4√N √((1−B)/(πB)) ((1+B)/(1−B))^{N/2} for B > 0.
pub fn asymptotic_count_stationary(b: f64, n: usize) -> Result<CountReport> {
    check_nb(n, b)?;
    if b == 0.0 {
        return Err(Error::RegimeBoundary("B = 0 is the transition point; use the crossover laws".into()));
    }
    let nf = n as f64;
    let (ln, regime) = if b < 0.0 {
        (LN_2, Regime::BNeg)
    } else {
        let l = 4f64.ln() + 0.5 * nf.ln() + 0.5 * ((1.0 - b) / (PI * b)).ln() + nf * stationary_complexity(b);
        (l, Regime::BPos)
    };
    let mut r = CountReport::from_log(LogValue::exact(ln), Method::Asymptotic, regime)
        .with_param("N", nf)
        .with_param("B", b);
    if b.abs() * nf.cbrt() < ASYMPTOTIC_WINDOW {
        r = r.with_warning(format!(
            "|B| N^(1/3) = {:.3} < {ASYMPTOTIC_WINDOW}: outside the asymptotic window",
            b.abs() * nf.cbrt()
        ));
    }
    Ok(r)
}

/// ln C_N(B) = ln[8A 2^{3/16} N^{−17/36} B^{23/32} √(1−B) e^{(4√2/3)N^{1/2}B^{3/2}}].
pub fn ln_minima_prefactor(b: f64, n: usize) -> f64 {
    let nf = n as f64;
    8f64.ln() + ln_tail_const_a() + 3.0 / 16.0 * LN_2 - 17.0 / 36.0 * nf.ln() + 23.0 / 32.0 * b.ln()
        + 0.5 * (1.0 - b).ln()
        + 4.0 * SQRT_2 / 3.0 * nf.sqrt() * b.powf(1.5)
}

/// Large-N mean number of minima: 1 for B < 0, C_N(B) e^{NΣ(B)} for B > 0.
pub fn asymptotic_count_minima(b: f64, n: usize) -> Result<CountReport> {
    check_nb(n, b)?;
    if b == 0.0 {
        return Err(Error::RegimeBoundary("B = 0 is the transition point; use crossover_edge_minima".into()));
    }
    let nf = n as f64;
    let (ln, regime) = if b < 0.0 {
        (0.0, Regime::BNeg)
    } else {
        (nf * minima_complexity(b) + ln_minima_prefactor(b, n), Regime::BPos)
    };
    let mut r = CountReport::from_log(LogValue::exact(ln), Method::Asymptotic, regime)
        .with_param("N", nf)
        .with_param("B", b);
    if b.abs() * nf.cbrt() < ASYMPTOTIC_WINDOW {
        r = r.with_warning(format!(
            "|B| N^(1/3) = {:.3} < {ASYMPTOTIC_WINDOW}: outside the asymptotic window",
            b.abs() * nf.cbrt()
        ));
    }
    Ok(r)
}

/// Below this ζ the edge density is replaced by its semicircle limit √|ζ|/π.
pub const EDGE_CLOSURE: f64 = -30.0;

/// Γ(3/2, x) = √x e^{−x} + (√π/2) erfc(√x).
fn upper_gamma_three_halves(x: f64) -> f64 {
    x.sqrt() * (-x).exp() + 0.5 * PI.sqrt() * libm::erfc(x.sqrt())
}

/// e^{−κ³/24} ∫_{−∞}^{ζ_c} e^{κζ/2} √|ζ|/π dζ.
pub(crate) fn edge_closure(kappa: f64) -> f64 {
    let x = -0.5 * kappa * EDGE_CLOSURE;
    (-kappa.powi(3) / 24.0).exp() / PI * (2.0 / kappa).powf(1.5) * upper_gamma_three_halves(x)
}

/// Upper end of the edge integrals: past the saddle κ²/4 of e^{κζ/2}Ai(ζ)
/// by enough widths (√κ) to lose ~70 nats.
pub(crate) fn edge_upper(kappa: f64) -> f64 {
    (0.25 * kappa * kappa + 12.0 * kappa.sqrt() + 10.0).max(12.0)
}

/// lim E N_s at fixed κ = −2N^{1/3}B > 0:
/// 4 e^{−κ³/24} ∫ e^{κζ/2} ρ_edge(ζ) dζ.
pub fn crossover_edge_stationary(kappa: f64) -> Result<f64> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return domain(format!(
            "crossover_edge_stationary needs kappa > 0 (got {kappa}); the integral diverges at 0 and the B > 0 side is the bulk crossover"
        ));
    }
    let c = kappa.powi(3) / 24.0;
    let hi = edge_upper(kappa);
    let breaks: Vec<f64> = (EDGE_CLOSURE as i64 + 1..hi.ceil() as i64).map(|k| k as f64).collect();
    let spec = QuadratureSpec::new(1e-300, 1e-13).with_max_subdivisions(20_000);
    let main = integrate_with_breaks(|z| (0.5 * kappa * z - c).exp() * density_edge(z), EDGE_CLOSURE, hi, &breaks, &spec)?;
    Ok(4.0 * (main.value + edge_closure(kappa)))
}

/// Scan range for the edge-minima integrand e^{κζ/2} F1'(ζ).
pub(crate) fn minima_scan_range(kappa: f64) -> (f64, f64) {
    let lo = if kappa < 0.0 { -2.0 * (-kappa).sqrt() - 6.0 } else { -6.0 };
    let hi = if kappa > 0.0 { 0.25 * kappa * kappa + 6.0 } else { 6.0 };
    (lo.min(-6.0), hi.max(6.0))
}

/// ln of lim E N_m at fixed signed κ = −2N^{1/3}B:
/// ln[2 e^{−κ³/24} ∫ e^{κζ/2} F1'(ζ) dζ].
pub fn ln_crossover_edge_minima(tw: &Tw1Evaluator, kappa: f64) -> Result<f64> {
    if !kappa.is_finite() {
        return domain("crossover_edge_minima needs finite kappa");
    }
    let c = kappa.powi(3) / 24.0;
    let (lo, hi) = minima_scan_range(kappa);
    let spec = QuadratureSpec::new(1e-300, 1e-13).with_max_subdivisions(20_000);
    let r = ln_integrate(
        |z| 0.5 * kappa * z + tw.ln_f1_prime(z),
        lo,
        hi,
        0.02,
        LN_DROP,
        &[tw.zeta_lo(), tw.zeta_hi()],
        &spec,
    )?;
    Ok(LN_2 - c + r.ln_value)
}

pub fn crossover_edge_minima(tw: &Tw1Evaluator, kappa: f64) -> Result<f64> {
    Ok(ln_crossover_edge_minima(tw, kappa)?.exp())
}

/// Signed edge variable κ = −2N^{1/3}B (κ > 0 on the trivial side B < 0).
pub fn kappa_of(n: usize, b: f64) -> f64 {
    -2.0 * (n as f64).cbrt() * b
}

/// Bulk variable γ = −NB.
pub fn gamma_of(n: usize, b: f64) -> f64 {
    -(n as f64) * b
}
