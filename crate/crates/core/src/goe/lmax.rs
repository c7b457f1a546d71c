//! Density of the largest eigenvalue for small matrices by direct quadrature.

use super::selberg_log_z;
use crate::error::{domain, Result};
use crate::numerics::quad::{integrate, Domain, QuadratureSpec};

pub const LMAX_EXACT_MAX_N: usize = 4;

/// ∫ over λ_1 < ... < λ_k < upper of the integrand built from `fixed`.
fn ordered(fixed: &mut Vec<f64>, remaining: usize, upper: f64, t: f64, a: f64, spec: &QuadratureSpec) -> f64 {
    if remaining == 0 {
        let mut v = 0.0;
        let mut p = 1.0;
        for (i, &x) in fixed.iter().enumerate() {
            v -= x * x / (2.0 * a);
            p *= t - x;
            for &y in &fixed[i + 1..] {
                p *= (x - y).abs();
            }
        }
        return v.exp() * p;
    }
    let f = |x: f64| {
        let mut next = fixed.clone();
        next.push(x);
        ordered(&mut next, remaining - 1, x, t, a, spec)
    };
    integrate(f, Domain::LowerHalf(upper), spec).map(|r| r.value).unwrap_or(f64::NAN)
}

/// dF_{n,a}/dt, the density of the largest eigenvalue of GOE(n, a), for
/// n ≤ 4:
/// n e^{−t²/2a} Z_n(a)^{−1} ∫_{λ_j < t} Π_j (t − λ_j) e^{−Σλ_j²/2a} |Δ_{n−1}(λ)| dλ.
pub fn lambda_max_density_exact(n: usize, a: f64, t: f64) -> Result<f64> {
    if n == 0 || n > LMAX_EXACT_MAX_N {
        return domain(format!("lambda_max_density_exact supports 1 <= n <= {LMAX_EXACT_MAX_N}, got {n}"));
    }
    if !(a > 0.0) || !t.is_finite() {
        return domain("lambda_max_density_exact needs a > 0 and finite t");
    }
    let lz = selberg_log_z(n, a)?;
    let tol = if n == 4 { 1e-8 } else { 1e-12 };
    let spec = QuadratureSpec::new(1e-300, tol).with_map_scale(a.sqrt());
    let v = ordered(&mut Vec::new(), n - 1, t, t, a, &spec) * (-(t * t) / (2.0 * a) - lz).exp();
    let fact: f64 = (1..n).map(|k| k as f64).product();
    if !v.is_finite() {
        return domain(format!("lambda_max_density_exact: quadrature failed at t = {t}"));
    }
    Ok(n as f64 * fact * v)
}
