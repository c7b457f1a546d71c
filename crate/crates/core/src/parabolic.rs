//! Mean numbers of stationary points and minima of a stationary isotropic
//! Gaussian field in R^N confined by a parabolic potential μ|x|²/2.
//!
//! The control parameter is m = μ/f''(0) with the transition at m = 1;
//! 𝓑 = m − 1. The finite-N count is
//!
//! E N_s = (2π)^{−1/2} 2^{(N+1)/2} N^{−(N−3)/2} e^{−Nm²/2} m^{−(N−1)} Γ(N/2) ∫ ρ_N(t) e^{−N(t² − 2√2 m t)/2} dt,
//!
//! normalized so that E N_s → 1 as m → ∞ (a single stationary point).
//! and the minima count is the same expression with ρ_N replaced by p_max/N,
//! p_max being the density of the largest eigenvalue. Both counts tend to 1
//! as m → ∞.

use std::f64::consts::{LN_2, PI, SQRT_2};
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::goe::{
    density_edge, lambda_max_density_exact, ln_density_exact, mc_det_functional, selberg_log_z, DensitySource,
    DetRegion, GaussWeight, GoeEnsembleSpec,
};
use crate::numerics::quad::{integrate_with_breaks, ln_integrate, QuadratureSpec};
use crate::numerics::special::ln_gamma;
use crate::report::{CountReport, LogValue, Method, Regime};
use crate::sphere::{edge_upper, ASYMPTOTIC_WINDOW, BULK_WINDOW, EDGE_CLOSURE, EDGE_WINDOW};
use crate::tracy_widom::Tw1Evaluator;

const LN_DROP: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParabolicSpec {
    pub mu: f64,
    pub f2d0: f64,
    pub n: usize,
}

impl ParabolicSpec {
    pub fn new(mu: f64, f2d0: f64, n: usize) -> Result<Self> {
        if !(mu > 0.0) || !(f2d0 > 0.0) || !mu.is_finite() || !f2d0.is_finite() || n < 2 {
            return domain(format!("parabolic model needs mu > 0, f''(0) > 0, N >= 2 (got {mu}, {f2d0}, {n})"));
        }
        Ok(Self { mu, f2d0, n })
    }

    /// m = μ/f''(0).
    pub fn m(&self) -> f64 {
        self.mu / self.f2d0
    }

    /// 𝓑 = m − 1.
    pub fn b_cal(&self) -> f64 {
        self.m() - 1.0
    }
}

/// Complexity ½(m² − 1) − ln m of stationary points (positive for m < 1).
pub fn stationary_complexity_parab(m: f64) -> f64 {
    0.5 * (m * m - 1.0) - m.ln()
}

/// Complexity 𝓑 − ½𝓑² − ln(1 + 𝓑) of minima, 𝓑 = m − 1 (positive for 𝓑 < 0).
pub fn minima_complexity_parab(b_cal: f64) -> f64 {
    b_cal - 0.5 * b_cal * b_cal - b_cal.ln_1p()
}

/// Window label in terms of 𝓑 = m − 1: bulk for |𝓑|√N ≤ 3, edge for
/// |𝓑|N^{1/3} ≤ 2, otherwise `BPos` for m < 1 (complex side) and `BNeg`
/// for m > 1.
pub fn regime_parab(n: usize, m: f64) -> Regime {
    let nf = n as f64;
    let bc = m - 1.0;
    if bc.abs() * nf.sqrt() <= BULK_WINDOW {
        Regime::Bulk
    } else if bc.abs() * nf.cbrt() <= EDGE_WINDOW {
        Regime::Edge
    } else if bc < 0.0 {
        Regime::BPos
    } else {
        Regime::BNeg
    }
}

fn check_mn(m: f64, n: usize) -> Result<()> {
    if !(m > 0.0) || !m.is_finite() {
        return domain(format!("m = {m}; need m > 0"));
    }
    if n < 2 {
        return domain(format!("N = {n}; need N >= 2"));
    }
    Ok(())
}

/// ln[(2π)^{−1/2} 2^{(N+1)/2} N^{−(N−3)/2} e^{−Nm²/2} m^{−(N−1)} Γ(N/2)].
pub fn ln_prefactor_parab(m: f64, n: usize) -> Result<f64> {
    let nf = n as f64;
    Ok(0.5 * (nf + 1.0) * LN_2 - 0.5 * (2.0 * PI).ln() - 0.5 * (nf - 3.0) * nf.ln() - 0.5 * nf * m * m - (nf - 1.0) * m.ln()
        + ln_gamma(0.5 * nf)?)
}

fn ln_z_ratio(n: usize) -> Result<f64> {
    let a = 1.0 / n as f64;
    Ok(selberg_log_z(n - 1, a)? - selberg_log_z(n, a)?)
}

/// ln ∫ ρ_N(t) e^{−N(t² − 2√2 m t)/2} dt by quadrature (N even, N ≤ 40).
pub fn ln_tilt_integral_exact(m: f64, n: usize) -> Result<LogValue> {
    check_mn(m, n)?;
    ln_density_exact(n, 0.0)?;
    let nf = n as f64;
    let g = |t: f64| ln_density_exact(n, t).unwrap_or(f64::NEG_INFINITY) - 0.5 * nf * (t * t - 2.0 * SQRT_2 * m * t);
    let hi = (SQRT_2 * m).max(SQRT_2) + 1.5;
    let spec = QuadratureSpec::new(1e-15, 1e-12).with_max_subdivisions(20_000);
    let r = ln_integrate(g, -2.5, hi, 0.01, LN_DROP, &[], &spec)?;
    Ok(LogValue::new(r.ln_value, r.rel_err))
}

/// The same integral by Monte Carlo through the determinant form
/// (Z_{N−1}/Z_N) E ∫ e^{−Nt² + √2 N m t} |det(t − H̃)| dt, H̃ ~ GOE(N−1, 1/N).
/// With `region = AboveMax` and an extra factor N it gives the λ_max
/// version used for minima.
pub fn ln_tilt_integral_mc(
    m: f64,
    n: usize,
    region: DetRegion,
    n_samples: usize,
    stream: &crate::numerics::rng::RandomStream,
) -> Result<LogValue> {
    check_mn(m, n)?;
    let nf = n as f64;
    let spec = GoeEnsembleSpec::new(n - 1, 1.0 / nf)?;
    let w = GaussWeight::new(nf, SQRT_2 * nf * m)?;
    let e = mc_det_functional(&spec, &w, region, n_samples, stream);
    let extra = if region == DetRegion::All { 0.0 } else { nf.ln() };
    Ok(LogValue::new(e.ln_mean + ln_z_ratio(n)? + extra, e.rel_stderr))
}

/// Exact finite-N mean number of stationary points.
pub fn count_stationary_parab(m: f64, n: usize, source: &DensitySource) -> Result<CountReport> {
    check_mn(m, n)?;
    let pre = ln_prefactor_parab(m, n)?;
    let (v, method) = match *source {
        DensitySource::Exact => (ln_tilt_integral_exact(m, n)?, Method::ExactQuadrature),
        DensitySource::Mc { n_samples, stream } => {
            (ln_tilt_integral_mc(m, n, DetRegion::All, n_samples, &stream)?, Method::McOracle)
        }
    };
    Ok(CountReport::from_log(LogValue::new(pre + v.ln, v.err), method, regime_parab(n, m))
        .with_param("N", n as f64)
        .with_param("m", m))
}

/// Exact finite-N mean number of minima: Monte Carlo for any N, or the
/// small-N quadrature of the λ_max density (N ≤ 4). The tilt integral of
/// p_max is divided by N.
pub fn count_minima_parab(m: f64, n: usize, source: &DensitySource) -> Result<CountReport> {
    check_mn(m, n)?;
    let pre = ln_prefactor_parab(m, n)?;
    let nf = n as f64;
    let (v, method) = match *source {
        DensitySource::Exact => {
            lambda_max_density_exact(n, 1.0 / nf, 0.0)?;
            let g = |t: f64| {
                let d = lambda_max_density_exact(n, 1.0 / nf, t).unwrap_or(0.0);
                d.ln() - 0.5 * nf * (t * t - 2.0 * SQRT_2 * m * t)
            };
            let spec = QuadratureSpec::new(1e-300, 1e-10).with_max_subdivisions(20_000);
            let r = ln_integrate(g, -2.5, SQRT_2 * m + 1.5, 0.05, LN_DROP, &[], &spec)?;
            (LogValue::new(r.ln_value, r.rel_err), Method::ExactQuadrature)
        }
        DensitySource::Mc { n_samples, stream } => {
            (ln_tilt_integral_mc(m, n, DetRegion::AboveMax, n_samples, &stream)?, Method::McOracle)
        }
    };
    Ok(CountReport::from_log(LogValue::new(pre + v.ln - nf.ln(), v.err), method, regime_parab(n, m))
        .with_param("N", nf)
        .with_param("m", m))
}

fn window_warning(m: f64, n: usize) -> Option<String> {
    let x = (m - 1.0).abs() * (n as f64).cbrt();
    (x < ASYMPTOTIC_WINDOW).then(|| format!("|m - 1| N^(1/3) = {x:.3} < {ASYMPTOTIC_WINDOW}: outside the asymptotic window"))
}

/// Large-N mean number of stationary points: 4√(N/π) m √(1 − m²) e^{NΣ_s(m)}
/// for m < 1 and 1 for m > 1.
pub fn asymptotic_parab(m: f64, n: usize) -> Result<CountReport> {
    check_mn(m, n)?;
    if m == 1.0 {
        return Err(Error::RegimeBoundary("m = 1 is the transition point; use the crossover laws".into()));
    }
    let nf = n as f64;
    let (ln, regime) = if m < 1.0 {
        let l = (4.0 * (nf / PI).sqrt() * m * (1.0 - m * m).sqrt()).ln() + nf * stationary_complexity_parab(m);
        (l, Regime::BPos)
    } else {
        (0.0, Regime::BNeg)
    };
    let mut r = CountReport::from_log(LogValue::exact(ln), Method::Asymptotic, regime)
        .with_param("N", nf)
        .with_param("m", m);
    if let Some(w) = window_warning(m, n) {
        r = r.with_warning(w);
    }
    Ok(r)
}

/// Large-N mean number of minima to leading exponential order: e^{NΣ(𝓑)}
/// for m < 1 (no prefactor is available) and 1 for m > 1.
pub fn asymptotic_minima_parab(m: f64, n: usize) -> Result<CountReport> {
    check_mn(m, n)?;
    if m == 1.0 {
        return Err(Error::RegimeBoundary("m = 1 is the transition point; use the crossover law".into()));
    }
    let nf = n as f64;
    let (ln, regime) = if m < 1.0 {
        (nf * minima_complexity_parab(m - 1.0), Regime::BPos)
    } else {
        (0.0, Regime::BNeg)
    };
    let mut r = CountReport::from_log(LogValue::exact(ln), Method::Asymptotic, regime)
        .with_param("N", nf)
        .with_param("m", m);
    if m < 1.0 {
        r = r.with_warning("leading exponential order only");
    }
    if let Some(w) = window_warning(m, n) {
        r = r.with_warning(w);
    }
    Ok(r)
}

/// Edge density with its semicircle closure √|ζ|/π below [`EDGE_CLOSURE`].
fn ln_edge_density_closed(z: f64) -> f64 {
    if z < EDGE_CLOSURE {
        0.5 * (-z).ln() - PI.ln()
    } else {
        density_edge(z).ln()
    }
}

/// lim E N_s at fixed κ = 2N^{1/3}𝓑 > 0: 2 e^{−κ³/24} ∫ e^{κζ/2} ρ_edge(ζ) dζ.
pub fn crossover_edge_parab(kappa: f64) -> Result<f64> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return domain(format!("crossover_edge_parab needs kappa > 0 (got {kappa})"));
    }
    let c = kappa.powi(3) / 24.0;
    let spec = QuadratureSpec::new(1e-300, 1e-13).with_max_subdivisions(50_000);
    let r = ln_integrate(
        |z| 0.5 * kappa * z + ln_edge_density_closed(z),
        EDGE_CLOSURE,
        edge_upper(kappa),
        0.05,
        LN_DROP + 10.0,
        &[EDGE_CLOSURE],
        &spec,
    )?;
    Ok(2.0 * (r.ln_value - c).exp())
}

/// ln of the bulk crossover at fixed γ = 𝓑√N with tolerance `rel_tol`.
pub fn ln_crossover_bulk_parab_tol(gamma: f64, rel_tol: f64) -> Result<f64> {
    if !gamma.is_finite() {
        return domain("crossover_bulk_parab needs finite gamma");
    }
    // q = w²/|γ|: |γ|^{3/2} ∫ √q e^{−γ²(q² + 2q sgn γ)} dq = ∫ 2w² e^{−w⁴ − 2γw²} dw
    let f = |w: f64| {
        if w <= 0.0 {
            f64::NEG_INFINITY
        } else {
            LN_2 + 2.0 * w.ln() - w.powi(4) - 2.0 * gamma * w * w
        }
    };
    let r = gamma.abs().sqrt();
    let step = 0.01 / (1.0 + r);
    let spec = QuadratureSpec::new(1e-300, rel_tol);
    let res = ln_integrate(f, 0.0, 1.5 * r + 3.0, step, LN_DROP + 10.0, &[], &spec)?;
    Ok((4.0 * SQRT_2 / PI).ln() + res.ln_value)
}

/// lim N^{−1/4} E N_s at fixed γ = 𝓑√N:
/// (4√2/π)|γ|^{3/2} ∫_0^∞ √q e^{−γ²(q² + 2q sgn γ)} dq.
pub fn crossover_bulk_parab(gamma: f64) -> Result<f64> {
    Ok(ln_crossover_bulk_parab_tol(gamma, 1e-12)?.exp())
}

/// Edge variable δ = N^{1/3}𝓑 (δ > 0 for m > 1).
pub fn delta_of(n: usize, m: f64) -> f64 {
    (n as f64).cbrt() * (m - 1.0)
}

/// ln of lim E N_m at fixed δ = N^{1/3}𝓑: ln[2 e^{−δ³/3} ∫ e^{δζ} F1'(ζ) dζ].
pub fn ln_crossover_minima_parab(tw: &Tw1Evaluator, delta: f64) -> Result<f64> {
    if !delta.is_finite() || delta.abs() > 12.0 {
        return domain(format!("crossover_minima_parab supports |delta| <= 12 (got {delta})"));
    }
    let c = delta.powi(3) / 3.0;
    let (lo, hi) = if delta > 0.0 {
        (-12.0, delta * delta + 14.0 * delta.sqrt() + 10.0)
    } else {
        (-2.0 * (-2.0 * delta).sqrt() - 14.0, 12.0)
    };
    let breaks: Vec<f64> = (lo.ceil() as i64..=hi.floor() as i64).map(|k| k as f64).collect();
    let spec = QuadratureSpec::new(1e-300, 1e-13).with_max_subdivisions(20_000);
    let r = integrate_with_breaks(|z| (delta * z - c + tw.ln_f1_prime(z)).exp(), lo, hi, &breaks, &spec)?;
    Ok(LN_2 + r.value.ln())
}

pub fn crossover_minima_parab(tw: &Tw1Evaluator, delta: f64) -> Result<f64> {
    Ok(ln_crossover_minima_parab(tw, delta)?.exp())
}

/// Range searched for the Laplace saddle.
pub const SADDLE_RANGE: (f64, f64) = (-40.0, 200.0);

/// Saddle ζ* of e^{δζ} F1'(ζ): (ln F1')'(ζ*) = −δ.
pub fn laplace_saddle(tw: &Tw1Evaluator, delta: f64) -> Result<f64> {
    let f = |z: f64| tw.dln_f1_prime(z) + delta;
    let (mut a, mut b) = SADDLE_RANGE;
    let (fa, fb) = (f(a), f(b));
    if !(fa > 0.0 && fb < 0.0) {
        return Err(Error::NoRoot(format!("Laplace saddle for delta = {delta} outside [{a}, {b}]")));
    }
    for _ in 0..200 {
        let c = 0.5 * (a + b);
        if f(c) > 0.0 {
            a = c;
        } else {
            b = c;
        }
        if b - a < 1e-13 * (1.0 + c.abs()) {
            break;
        }
    }
    Ok(0.5 * (a + b))
}

/// ln 𝒩(δ), the Laplace approximation
/// 2 e^{−δ³/3} e^{δζ*} F1'(ζ*) √(2π / (−(ln F1')''(ζ*))).
pub fn ln_laplace_minima_parab(tw: &Tw1Evaluator, delta: f64) -> Result<f64> {
    let z = laplace_saddle(tw, delta)?;
    let d2 = tw.d2ln_f1_prime(z);
    if !(d2 < 0.0) {
        return Err(Error::NoRoot(format!("saddle at zeta = {z} is not a maximum")));
    }
    Ok(LN_2 - delta.powi(3) / 3.0 + delta * z + tw.ln_f1_prime(z) + 0.5 * (2.0 * PI / -d2).ln())
}

pub fn laplace_minima_parab(tw: &Tw1Evaluator, delta: f64) -> Result<f64> {
    Ok(ln_laplace_minima_parab(tw, delta)?.exp())
}

/// Crossover minima count at finite (m, N) as a report.
pub fn crossover_minima_parab_report(tw: &Tw1Evaluator, m: f64, n: usize) -> Result<CountReport> {
    check_mn(m, n)?;
    let d = delta_of(n, m);
    let l = ln_crossover_minima_parab(tw, d)?;
    Ok(CountReport::from_log(LogValue::exact(l), Method::Crossover, regime_parab(n, m))
        .with_param("N", n as f64)
        .with_param("m", m)
        .with_param("delta", d))
}

/// Laplace minima count at finite (m, N) as a report.
pub fn laplace_minima_parab_report(tw: &Tw1Evaluator, m: f64, n: usize) -> Result<CountReport> {
    check_mn(m, n)?;
    let d = delta_of(n, m);
    let l = ln_laplace_minima_parab(tw, d)?;
    Ok(CountReport::from_log(LogValue::exact(l), Method::Laplace, regime_parab(n, m))
        .with_param("N", n as f64)
        .with_param("m", m)
        .with_param("delta", d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// e^{NΣ(𝓑)}, m < 1.
    A,
    /// Laplace approximation 𝒩(δ) in the transition region.
    B,
    /// The constant 1, m > 1.
    C,
}

impl Branch {
    pub fn label(&self) -> &'static str {
        match self {
            Branch::A => "a",
            Branch::B => "b",
            Branch::C => "c",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Figure2Row {
    pub m: f64,
    pub branch: Branch,
    pub log_count: f64,
    /// m lies in this branch's window: |δ| ≥ 5 for (a) and (c), |δ| < 5 for (b).
    pub in_window: bool,
}

/// Log mean number of minima along `m_grid` on all branches defined at
/// each m.
pub fn figure2_table(tw: &Tw1Evaluator, n: usize, m_grid: &[f64]) -> Result<Vec<Figure2Row>> {
    let mut rows = Vec::new();
    for &m in m_grid {
        check_mn(m, n)?;
        let d = delta_of(n, m);
        let asym = d.abs() >= ASYMPTOTIC_WINDOW;
        if m < 1.0 {
            rows.push(Figure2Row { m, branch: Branch::A, log_count: n as f64 * minima_complexity_parab(m - 1.0), in_window: asym });
        }
        if let Ok(l) = ln_laplace_minima_parab(tw, d) {
            rows.push(Figure2Row { m, branch: Branch::B, log_count: l, in_window: !asym });
        }
        if m > 1.0 {
            rows.push(Figure2Row { m, branch: Branch::C, log_count: 0.0, in_window: asym });
        }
    }
    Ok(rows)
}

pub const FIGURE2_CSV_HEADER: &str = "m,branch,log_count,in_window";

pub fn write_figure2_csv<W: Write>(rows: &[Figure2Row], mut w: W) -> std::io::Result<()> {
    writeln!(w, "{FIGURE2_CSV_HEADER}")?;
    for r in rows {
        writeln!(w, "{},{},{},{}", r.m, r.branch.label(), r.log_count, r.in_window)?;
    }
    Ok(())
}

/// ln √(det A) for a positive diagonal A.
pub fn ln_anisotropic_factor(diag_a: &[f64]) -> Result<f64> {
    if let Some(a) = diag_a.iter().find(|a| !(**a > 0.0) || !a.is_finite()) {
        return domain(format!("anisotropy entries must be positive, got {a}"));
    }
    Ok(0.5 * diag_a.iter().map(|a| a.ln()).sum::<f64>())
}

/// √(det A): the factor relating anisotropic and isotropic counts.
pub fn anisotropic_factor(diag_a: &[f64]) -> Result<f64> {
    Ok(ln_anisotropic_factor(diag_a)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goe::McEstimate;
    use crate::numerics::rng::RandomStream;
    use crate::sphere::{crossover_edge_stationary, ln_crossover_edge_minima};
    use proptest::prelude::*;
    use rand::Rng;
    use rand_distr::StandardNormal;
    use std::sync::OnceLock;

    fn tw() -> &'static Tw1Evaluator {
        static TW: OnceLock<Tw1Evaluator> = OnceLock::new();
        TW.get_or_init(|| Tw1Evaluator::new().unwrap())
    }

    fn mc(n: usize, seed: u64) -> DensitySource {
        DensitySource::Mc { n_samples: n, stream: RandomStream::new(seed, 0) }
    }

    #[test]
    fn complexities() {
        assert_eq!(stationary_complexity_parab(1.0), 0.0);
        assert!((stationary_complexity_parab(0.9) - 0.010_360_515_657_826).abs() < 1e-12);
        assert!(stationary_complexity_parab(0.5) > 0.0);
        // 𝓑 = 0.1: 0.1 − 0.005 − ln 1.1
        assert!((minima_complexity_parab(0.1) - (0.095 - 1.1f64.ln())).abs() < 1e-15);
        let r = minima_complexity_parab(-0.01) / (0.01f64.powi(3) / 3.0);
        assert!((r - 1.0).abs() < 0.01, "{r}");
    }

    #[test]
    fn spec_and_m() {
        let s = ParabolicSpec::new(1.5, 3.0, 10).unwrap();
        assert_eq!(s.m(), 0.5);
        assert_eq!(s.b_cal(), -0.5);
        assert!(ParabolicSpec::new(0.0, 1.0, 10).is_err());
        assert!(count_stationary_parab(-1.0, 8, &DensitySource::Exact).is_err());
    }

    #[test]
    fn exact_vs_mc_stationary() {
        let ex = count_stationary_parab(1.0, 8, &DensitySource::Exact).unwrap();
        let m = count_stationary_parab(1.0, 8, &mc(100_000, 1)).unwrap();
        assert!(ex.log().z_score(&m.log()) < 3.0, "{ex:?} {m:?}");
        let ex = count_stationary_parab(0.6, 20, &DensitySource::Exact).unwrap();
        let m = count_stationary_parab(0.6, 20, &mc(20_000, 2)).unwrap();
        assert!(ex.log().z_score(&m.log()) < 3.0, "{ex:?} {m:?}");
    }

    #[test]
    fn stationary_floor_and_trivial_limit() {
        for m in [0.5, 0.9, 1.0, 1.3, 2.0] {
            let c = count_stationary_parab(m, 10, &DensitySource::Exact).unwrap();
            assert!(c.linear() >= 1.0 - 1e-8, "{m}: {c:?}");
        }
        let c = count_stationary_parab(2.0, 40, &DensitySource::Exact).unwrap();
        assert!((c.linear() - 1.0).abs() < 0.1, "{c:?}");
        // strong confinement leaves exactly one stationary point
        for n in [2, 10, 40] {
            let c = count_stationary_parab(10.0, n, &DensitySource::Exact).unwrap();
            assert!((c.linear() - 1.0).abs() < 1e-8, "{n}: {c:?}");
        }
    }

    #[test]
    fn asymptotic_prefactor_against_exact() {
        // 4√(N/π) m √(1−m²) against the reading 4√N π m √(1−m²)
        let (m, n) = (0.5, 40);
        let ex = count_stationary_parab(m, n, &DensitySource::Exact).unwrap().log_value;
        let a = asymptotic_parab(m, n).unwrap().log_value;
        let with_pi = a + 1.5 * PI.ln();
        assert!((a - ex).abs() < 0.05, "{a} {ex}");
        assert!((with_pi - ex).abs() > 0.5);
        assert_eq!(asymptotic_parab(2.0, 100).unwrap().value, Some(1.0));
    }

    #[test]
    fn edge_half_identity() {
        for k in [0.5, 2.0, 5.0] {
            let p = crossover_edge_parab(k).unwrap();
            let s = crossover_edge_stationary(k).unwrap();
            assert!((p / (0.5 * s) - 1.0).abs() < 1e-10, "{k}: {p} {s}");
        }
        assert!((crossover_edge_parab(9.0).unwrap() - 1.0).abs() < 0.05);
        let k = 0.1f64;
        let want = 2.0 * SQRT_2 / (PI.sqrt() * k.powf(1.5));
        assert!((crossover_edge_parab(k).unwrap() / want - 1.0).abs() < 0.05);
    }

    #[test]
    fn bulk_crossover() {
        // γ → +∞: 1/(√π γ^{3/2}) (1 − 15/(16γ²) + O(γ^{−4}))
        for g in [6.0f64, 12.0] {
            let r = crossover_bulk_parab(g).unwrap() * PI.sqrt() * g.powf(1.5);
            assert!((r - (1.0 - 15.0 / (16.0 * g * g))).abs() < 3.0 / g.powi(4), "{g}: {r}");
        }
        let l4 = ln_crossover_bulk_parab_tol(-4.0, 1e-12).unwrap();
        let l5 = ln_crossover_bulk_parab_tol(-5.0, 1e-12).unwrap();
        let slope = (l5 - l4) / 9.0;
        assert!((slope - 1.0).abs() < 0.02, "{slope}");
        let a = ln_crossover_bulk_parab_tol(1.0, 1e-10).unwrap();
        let b = ln_crossover_bulk_parab_tol(1.0, 1e-14).unwrap();
        assert!((a - b).abs() < 1e-8);
        let at0 = 2.0 * SQRT_2 * ln_gamma(0.75).unwrap().exp() / PI;
        assert!((crossover_bulk_parab(0.0).unwrap() / at0 - 1.0).abs() < 1e-10);
        assert!((crossover_bulk_parab(1e-6).unwrap() / at0 - 1.0).abs() < 1e-5);
    }

    #[test]
    fn minima_crossover_identity_and_limits() {
        let t = tw();
        assert!((crossover_minima_parab(t, 0.0).unwrap() - 2.0).abs() < 1e-3);
        for d in [0.5, 1.0, -0.5, -1.0] {
            let p = ln_crossover_minima_parab(t, d).unwrap();
            let s = ln_crossover_edge_minima(t, 2.0 * d).unwrap();
            assert!((p - s).abs() < 1e-10, "{d}: {p} {s}");
        }
        assert!((crossover_minima_parab(t, 4.0).unwrap() - 1.0).abs() < 0.05);
    }

    #[test]
    fn laplace_accuracy() {
        let t = tw();
        for d in [1.0, 1.5, 2.0, 2.5, 3.0] {
            let l = laplace_minima_parab(t, d).unwrap();
            let e = crossover_minima_parab(t, d).unwrap();
            assert!((l / e - 1.0).abs() < 0.05, "{d}: {l} {e}");
        }
        let z = laplace_saddle(t, 2.0).unwrap();
        assert!((t.dln_f1_prime(z) + 2.0).abs() < 1e-8);
    }

    #[test]
    fn minima_exact_small_n_vs_mc() {
        let ex = count_minima_parab(0.8, 3, &DensitySource::Exact).unwrap();
        let m = count_minima_parab(0.8, 3, &mc(100_000, 3)).unwrap();
        assert!(ex.log().z_score(&m.log()) < 3.0, "{ex:?} {m:?}");
        let s = count_stationary_parab(0.8, 4, &mc(50_000, 4)).unwrap();
        let mm = count_minima_parab(0.8, 4, &mc(50_000, 4)).unwrap();
        assert!(mm.linear() <= s.linear(), "{mm:?} {s:?}");
        for n in [2, 3] {
            let c = count_minima_parab(8.0, n, &DensitySource::Exact).unwrap();
            assert!((c.linear() - 1.0).abs() < 1e-6, "{n}: {c:?}");
        }
    }

    #[test]
    fn figure2_rows() {
        let rows = figure2_table(tw(), 10_000, &[0.7, 1.0, 1.2]).unwrap();
        let a = rows.iter().find(|r| r.m == 0.7 && r.branch == Branch::A).unwrap();
        assert!((a.log_count - 10_000.0 * (-0.3 - 0.045 - 0.7f64.ln())).abs() < 1e-9);
        assert!(a.log_count > 0.0 && a.in_window);
        let c = rows.iter().find(|r| r.m == 1.2 && r.branch == Branch::C).unwrap();
        assert_eq!(c.log_count, 0.0);
        assert!(rows.iter().any(|r| r.m == 1.0 && r.branch == Branch::B && r.in_window));
        let mut buf = Vec::new();
        write_figure2_csv(&rows, &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("m,branch,log_count,in_window\n"));
    }

    #[test]
    fn anisotropy() {
        assert_eq!(anisotropic_factor(&[1.0, 1.0, 1.0]).unwrap(), 1.0);
        assert!((anisotropic_factor(&[4.0, 9.0]).unwrap() - 6.0).abs() < 1e-14);
        assert!(anisotropic_factor(&[1.0, 0.0]).is_err());
    }

    proptest! {
        #[test]
        fn anisotropy_multiplicative(a in prop::collection::vec(0.01f64..100.0, 1..6), b in prop::collection::vec(0.01f64..100.0, 1..6)) {
            let mut ab = a.clone();
            ab.extend(&b);
            let lhs = ln_anisotropic_factor(&ab).unwrap();
            let rhs = ln_anisotropic_factor(&a).unwrap() + ln_anisotropic_factor(&b).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn anisotropic_hessian_covariance() {
        // H̃ with E H̃_ik H̃_jl = F''(0)[a_i a_k δ_ij δ_kl + a_i a_j δ_ik δ_jl + a_i a_j δ_jk δ_il],
        // rescaled H = A^{-1/2} H̃ A^{-1/2}, must have the isotropic covariances
        let (a1, a2, f2) = (2.0f64, 0.5f64, 1.3f64);
        // (H̃11, H̃22, H̃12): Var 3a1²F'', 3a2²F'', a1a2F''; Cov(11, 22) = a1a2F''
        let c11 = 3.0 * a1 * a1 * f2;
        let c22 = 3.0 * a2 * a2 * f2;
        let c12 = a1 * a2 * f2;
        let l11 = c11.sqrt();
        let l21 = c12 / l11;
        let l22 = (c22 - l21 * l21).sqrt();
        let l33 = (a1 * a2 * f2).sqrt();
        let n = 1_000_000;
        let mut rng = RandomStream::new(41, 0).rng();
        let mut s = [Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n)];
        for _ in 0..n {
            let z: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
            let h11 = l11 * z[0] / a1;
            let h22 = (l21 * z[0] + l22 * z[1]) / a2;
            let h12 = l33 * z[2] / (a1 * a2).sqrt();
            s[0].push(h11 * h11);
            s[1].push(h22 * h22);
            s[2].push(h12 * h12);
            s[3].push(h11 * h22);
        }
        let want = [3.0 * f2, 3.0 * f2, f2, f2];
        for k in 0..4 {
            let e = McEstimate::from_samples(&s[k]);
            assert!(e.z_score(want[k]) < 3.0, "{k}: {e:?} vs {}", want[k]);
        }
    }
}
