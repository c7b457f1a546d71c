//! The Gaussian Orthogonal Ensemble.
//!
//! `GOE(n, a)` is the law of real symmetric n×n matrices with independent
//! centred Gaussian entries, E H_ii² = a and E H_ij² = a/2 (i < j). The
//! "standardized" ensemble uses a = 1/n; its mean eigenvalue density tends to
//! the semicircle (1/π)√(2 - t²).

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numerics::rng::RandomStream;
use crate::numerics::special::ln_gamma;

pub mod density;
pub mod eigen;
pub mod ensemble;
pub mod lmax;
pub mod mc;

pub use density::{
    density_asymptotic, density_edge, density_exact, ln_density_exact, mc_density, psi_plus,
};
pub use eigen::eigen_sym;
pub use ensemble::{sample_goe, sample_goe_eigenvalues, sample_goe_tridiagonal};
pub use lmax::lambda_max_density_exact;
pub use mc::{
    check_goe5, density_exact_general, ln_det_integral, mc_det_functional,
    mc_order_statistic_functional, mc_spectral_functional, DetRegion, GaussWeight, LogMcEstimate,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GoeEnsembleSpec {
    pub n: usize,
    pub a: f64,
}

impl GoeEnsembleSpec {
    pub fn new(n: usize, a: f64) -> Result<Self> {
        if n == 0 || !(a > 0.0) || !a.is_finite() {
            return domain(format!("GOE spec needs n >= 1 and a > 0 (got n = {n}, a = {a})"));
        }
        Ok(Self { n, a })
    }

    /// The standardized ensemble, a = 1/n.
    pub fn standardized(n: usize) -> Result<Self> {
        Self::new(n, 1.0 / n as f64)
    }
}

/// log of the normalization Z_n(a) = ∫ e^{-Σλ²/2a} |Δ(λ)| dλ over R^n.
pub fn selberg_log_z(n: usize, a: f64) -> Result<f64> {
    if n == 0 || !(a > 0.0) {
        return domain(format!("selberg_log_z needs n >= 1 and a > 0 (got {n}, {a})"));
    }
    let nf = n as f64;
    let lg32 = ln_gamma(1.5)?;
    let mut s = 0.5 * nf * (2.0 * std::f64::consts::PI).ln() + nf * (nf + 1.0) / 4.0 * a.ln();
    for j in 1..=n {
        s += ln_gamma(1.0 + j as f64 / 2.0)? - lg32;
    }
    Ok(s)
}

/// Mean and standard error of a Monte-Carlo average.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n_samples: usize,
}

impl McEstimate {
    /// Mean and standard error of `xs`, summed in order.
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len();
        if n == 0 {
            return Self { mean: f64::NAN, stderr: f64::NAN, n_samples: 0 };
        }
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = if n > 1 {
            xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n as f64 - 1.0)
        } else {
            0.0
        };
        Self { mean, stderr: (var / n as f64).sqrt(), n_samples: n }
    }

    /// |self - other| in units of the combined standard error.
    pub fn z_score(&self, value: f64) -> f64 {
        let d = (self.mean - value).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.stderr
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Exact,
    Asymptotic,
    Edge,
    Mc,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::Exact => "exact",
            Provenance::Asymptotic => "asymptotic",
            Provenance::Edge => "edge",
            Provenance::Mc => "mc",
        };
        f.write_str(s)
    }
}

/// How a spectral integral is evaluated: exactly (quadrature of a closed
/// form) or by Monte Carlo over GOE samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensitySource {
    Exact,
    Mc { n_samples: usize, stream: RandomStream },
}

/// A density sampled on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityCurve {
    pub abscissae: Vec<f64>,
    pub values: Vec<f64>,
    pub stderr: Option<Vec<f64>>,
    pub provenance: Provenance,
}

impl DensityCurve {
    pub fn new(abscissae: Vec<f64>, values: Vec<f64>, stderr: Option<Vec<f64>>, provenance: Provenance) -> Result<Self> {
        if abscissae.len() != values.len() || stderr.as_ref().is_some_and(|s| s.len() != values.len()) {
            return domain("density curve columns differ in length");
        }
        if abscissae.windows(2).any(|w| w[1] < w[0]) {
            return domain("density curve abscissae must be sorted");
        }
        if values.iter().any(|v| !(*v >= 0.0)) {
            return domain("density values must be nonnegative");
        }
        Ok(Self { abscissae, values, stderr, provenance })
    }

    /// Evaluate `f` on `grid`.
    pub fn from_fn<F: Fn(f64) -> Result<f64>>(grid: Vec<f64>, provenance: Provenance, f: F) -> Result<Self> {
        let values = grid.iter().map(|&t| f(t)).collect::<Result<Vec<f64>>>()?;
        Self::new(grid, values, None, provenance)
    }

    /// Trapezoid integral over the grid.
    pub fn trapezoid(&self) -> f64 {
        self.abscissae
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
            .sum()
    }

    /// CSV with header `t,value,stderr,provenance`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "t,value,stderr,provenance")?;
        for i in 0..self.values.len() {
            let se = self.stderr.as_ref().map_or(0.0, |s| s[i]);
            writeln!(w, "{},{},{},{}", self.abscissae[i], self.values[i], se, self.provenance)?;
        }
        Ok(())
    }
}

/// Evenly spaced grid of `n` points on [lo, hi].
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}
