//! Count reports shared by the sphere and parabolic counting modules.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest log-value whose exponential is still returned on the linear scale.
pub const LINEAR_LIMIT: f64 = 700.0;

/// Relative standard error above which a Monte-Carlo count is flagged.
pub const UNRELIABLE_REL_ERR: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactQuadrature,
    McOracle,
    Asymptotic,
    Crossover,
    Laplace,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ExactQuadrature => "exact-quadrature",
            Method::McOracle => "mc-oracle",
            Method::Asymptotic => "asymptotic",
            Method::Crossover => "crossover",
            Method::Laplace => "laplace",
        })
    }
}

/// Parameter regime of a count.
///
/// For the parabolic model the control parameter plays the role of
/// B = 1 − m, so `BPos` is the exponentially complex side in both models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "B<0")]
    BNeg,
    #[serde(rename = "B>0")]
    BPos,
    #[serde(rename = "edge-kappa")]
    Edge,
    #[serde(rename = "bulk-gamma")]
    Bulk,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::BNeg => "B<0",
            Regime::BPos => "B>0",
            Regime::Edge => "edge-kappa",
            Regime::Bulk => "bulk-gamma",
        })
    }
}

/// A positive quantity carried as its logarithm, with the error of the
/// logarithm (a relative error on the linear scale).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogValue {
    pub ln: f64,
    pub err: f64,
}

impl LogValue {
    pub fn new(ln: f64, err: f64) -> Self {
        Self { ln, err }
    }

    pub fn exact(ln: f64) -> Self {
        Self { ln, err: 0.0 }
    }

    pub fn value(&self) -> f64 {
        self.ln.exp()
    }

    /// |Δ ln| over the combined error.
    pub fn z_score(&self, other: &LogValue) -> f64 {
        let d = (self.ln - other.ln).abs();
        if d == 0.0 {
            return 0.0;
        }
        d / self.err.hypot(other.err)
    }
}

/// Mean count of stationary points (or minima) with provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    /// The count on the linear scale, `None` when it would overflow.
    pub value: Option<f64>,
    pub log_value: f64,
    /// Set when only `log_value` is meaningful.
    pub log_scaled: bool,
    pub method: Method,
    pub regime: Regime,
    /// Numerical error of `log_value`: the relative standard error for
    /// Monte-Carlo counts, the quadrature error estimate otherwise.
    pub err: f64,
    pub params: Vec<(String, f64)>,
    pub warnings: Vec<String>,
    /// Monte-Carlo estimate too noisy to be trusted.
    pub unreliable: bool,
}

impl CountReport {
    pub fn from_log(log_value: LogValue, method: Method, regime: Regime) -> Self {
        let log_scaled = !(log_value.ln <= LINEAR_LIMIT);
        let unreliable = method == Method::McOracle
            && (!log_value.err.is_finite() || log_value.err > UNRELIABLE_REL_ERR || !log_value.ln.is_finite());
        Self {
            value: if log_scaled { None } else { Some(log_value.ln.exp()) },
            log_value: log_value.ln,
            log_scaled,
            method,
            regime,
            err: log_value.err,
            params: Vec::new(),
            warnings: Vec::new(),
            unreliable,
        }
    }

    pub fn with_param(mut self, name: &str, v: f64) -> Self {
        self.params.push((name.to_string(), v));
        self
    }

    pub fn with_warning(mut self, w: impl Into<String>) -> Self {
        self.warnings.push(w.into());
        self
    }

    pub fn log(&self) -> LogValue {
        LogValue::new(self.log_value, self.err)
    }

    /// exp(log_value); may be +∞ for log-scaled reports.
    pub fn linear(&self) -> f64 {
        self.log_value.exp()
    }

    /// Standard error on the linear scale.
    pub fn stderr(&self) -> f64 {
        self.err * self.linear()
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub const CSV_HEADER: &'static str = "param,value,log_value,method,regime,err";

    /// One CSV row; `param` is the swept parameter. An overflowing linear
    /// value is written as an empty field.
    pub fn csv_row(&self, param: f64) -> String {
        let v = self.value.map(|v| v.to_string()).unwrap_or_default();
        format!("{param},{v},{},{},{},{}", self.log_value, self.method, self.regime, self.err)
    }
}
