use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::euler_characteristic;
use super::instance::PSpinInstance;
use crate::error::{Error, Result};
use crate::goe::eigen_sym;
use crate::linalg::{jacobi_eigen, lu_solve, Matrix};
use crate::numerics::rng::{par_samples, RandomStream};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationaryPoint {
    pub x: Vec<f64>,
    /// μ in ∇V(x) = 2μx.
    pub multiplier: f64,
    pub energy: f64,
    /// Number of negative eigenvalues of the tangential Hessian.
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusResult {
    pub n_stationary: usize,
    pub n_minima: usize,
    /// Σ (−1)^index.
    pub morse_sum: i64,
    pub saturated: bool,
    /// Smallest pairwise distance |x − y|/√N among the returned points.
    pub min_separation: f64,
    pub warnings: Vec<String>,
}

impl CensusResult {
    fn from_points(points: &[StationaryPoint], saturated: bool, warnings: Vec<String>) -> Self {
        let mut min_sep = f64::INFINITY;
        for (i, a) in points.iter().enumerate() {
            for b in &points[i + 1..] {
                min_sep = min_sep.min(distance(&a.x, &b.x));
            }
        }
        Self {
            n_stationary: points.len(),
            n_minima: points.iter().filter(|p| p.index == 0).count(),
            morse_sum: points.iter().map(|p| if p.index % 2 == 0 { 1 } else { -1 }).sum(),
            saturated,
            min_separation: min_sep,
            warnings,
        }
    }

    /// The Morse sum equals the Euler characteristic of the sphere.
    pub fn certified(&self, n: usize) -> bool {
        self.morse_sum == euler_characteristic(n)
    }
}

fn distance(x: &[f64], y: &[f64]) -> f64 {
    let d2: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
    (d2 / x.len() as f64).sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_sphere(x: &mut [f64]) {
    let s = (x.len() as f64 / dot(x, x)).sqrt();
    x.iter_mut().for_each(|v| *v *= s);
}

/// Number of negative eigenvalues of `a` restricted to the orthogonal
/// complement of x.
pub fn tangential_index(a: &Matrix, x: &[f64]) -> Result<usize> {
    let n = x.len();
    let norm = dot(x, x).sqrt();
    // Householder reflection Q with Q x ∝ e_{n−1}
    let mut w: Vec<f64> = x.iter().map(|v| v / norm).collect();
    let s = if w[n - 1] >= 0.0 { 1.0 } else { -1.0 };
    w[n - 1] += s;
    let ww = dot(&w, &w);
    let aw = a.matvec(&w);
    let waw = dot(&w, &aw);
    // Q A Q = A − β(w aᵀ + a wᵀ) + β² (wᵀAw) w wᵀ with a = Aw, β = 2/wᵀw
    let beta = 2.0 / ww;
    let m = n - 1;
    let mut t = Matrix::zeros(m, m);
    for i in 0..m {
        for k in i..m {
            let v = a[(i, k)] - beta * (w[i] * aw[k] + aw[i] * w[k]) + beta * beta * waw * w[i] * w[k];
            t[(i, k)] = v;
            t[(k, i)] = v;
        }
    }
    Ok(eigen_sym(&t)?.iter().filter(|e| **e < 0.0).count())
}

/// Riemannian Newton on the sphere from x. Returns the converged point and
/// its multiplier.
fn newton(inst: &PSpinInstance, mut x: Vec<f64>, max_iter: usize) -> Option<(Vec<f64>, f64)> {
    let n = x.len();
    let nf = n as f64;
    let cap = 0.5 * nf.sqrt();
    for _ in 0..max_iter {
        let ev = inst.eval(&x);
        let mu = dot(&x, &ev.gradient) / (2.0 * nf);
        let r: Vec<f64> = ev.gradient.iter().zip(&x).map(|(g, xi)| g - 2.0 * mu * xi).collect();
        let gn = dot(&ev.gradient, &ev.gradient).sqrt();
        if dot(&r, &r).sqrt() < 1e-11 * gn + 1e-13 {
            return Some((x, mu));
        }
        let mut b = Matrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for k in 0..n {
                b[(i, k)] = ev.hessian[(i, k)];
            }
            b[(i, i)] -= 2.0 * mu;
            b[(i, n)] = x[i];
            b[(n, i)] = x[i];
        }
        let mut rhs: Vec<f64> = r.iter().map(|v| -v).collect();
        rhs.push(0.0);
        let sol = lu_solve(&b, &rhs)?;
        let mut d = sol[..n].to_vec();
        let dn = dot(&d, &d).sqrt();
        if !dn.is_finite() {
            return None;
        }
        if dn > cap {
            d.iter_mut().for_each(|v| *v *= cap / dn);
        }
        x.iter_mut().zip(&d).for_each(|(xi, di)| *xi += di);
        to_sphere(&mut x);
    }
    None
}

fn projected_residual(inst: &PSpinInstance, x: &[f64]) -> (f64, f64) {
    let ev = inst.eval(x);
    let c = dot(x, &ev.gradient) / dot(x, x);
    let r: Vec<f64> = ev.gradient.iter().zip(x).map(|(g, xi)| g - c * xi).collect();
    (dot(&r, &r).sqrt(), dot(&ev.gradient, &ev.gradient).sqrt())
}

fn finish_point(inst: &PSpinInstance, x: Vec<f64>) -> Result<StationaryPoint> {
    let (x, mu) = newton(inst, x.clone(), 3).unwrap_or_else(|| {
        let g = inst.eval(&x).gradient;
        let mu = dot(&x, &g) / (2.0 * x.len() as f64);
        (x, mu)
    });
    let (res, gn) = projected_residual(inst, &x);
    if !(res < 1e-8 * gn + 1e-12) {
        return Err(Error::Enumeration(format!("stationary point residual {res:e} (|grad| = {gn:e})")));
    }
    let ev = inst.eval(&x);
    let mut a = ev.hessian;
    for i in 0..x.len() {
        a[(i, i)] -= 2.0 * mu;
    }
    let index = tangential_index(&a, &x)?;
    Ok(StationaryPoint { x, multiplier: mu, energy: ev.energy, index })
}

/// Bisection for a sign change of `f` on [a, b]; f(a) and f(b) must differ
/// in sign.
fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let fa = f(a);
    for _ in 0..300 {
        let c = 0.5 * (a + b);
        if c <= a.min(b) || c >= a.max(b) {
            break;
        }
        if (f(c) > 0.0) == (fa > 0.0) {
            a = c;
        } else {
            b = c;
        }
    }
    0.5 * (a + b)
}

/// All stationary points of a p = 2 instance from the secular equation
/// Σ h̃_i²/(w_i + ν)² = N, W = J + Jᵀ = Σ w_i v_i v_iᵀ, h̃ = Vᵀh, ν = 2μ.
pub fn enumerate_p2(inst: &PSpinInstance) -> Result<(CensusResult, Vec<StationaryPoint>)> {
    if inst.spec.p != 2 {
        return Err(Error::Unsupported(format!("enumerate_p2 needs p = 2, got {}", inst.spec.p)));
    }
    let n = inst.n();
    let nf = n as f64;
    let mut wm = Matrix::zeros(n, n);
    for i in 0..n {
        for k in 0..n {
            wm[(i, k)] = inst.couplings[i * n + k] + inst.couplings[k * n + i];
        }
    }
    let (w, v) = jacobi_eigen(&wm)?;
    let mut warnings = Vec::new();
    for i in 1..n {
        if (w[i] - w[i - 1]).abs() < 1e-10 {
            warnings.push(format!("near-degenerate poles w = {} and {}", w[i - 1], w[i]));
        }
    }
    let column = |i: usize| -> Vec<f64> { (0..n).map(|r| v[(r, i)]).collect() };
    let mut xs: Vec<Vec<f64>> = Vec::new();
    if inst.field.iter().all(|h| *h == 0.0) {
        for i in 0..n {
            let c: Vec<f64> = column(i).iter().map(|e| e * nf.sqrt()).collect();
            xs.push(c.iter().map(|e| -e).collect());
            xs.push(c);
        }
    } else {
        let ht: Vec<f64> = (0..n).map(|i| dot(&column(i), &inst.field)).collect();
        let h2: Vec<f64> = ht.iter().map(|h| h * h).collect();
        let s = |nu: f64| -> f64 { h2.iter().zip(&w).map(|(h, wi)| h / ((wi + nu) * (wi + nu))).sum::<f64>() - nf };
        let ds = |nu: f64| -> f64 { -2.0 * h2.iter().zip(&w).map(|(h, wi)| h / (wi + nu).powi(3)).sum::<f64>() };
        let reach = dot(&inst.field, &inst.field).sqrt() / nf.sqrt() * 1.01 + 1e-300;
        // poles at ν = −w_i, ascending
        let poles: Vec<f64> = w.iter().rev().map(|wi| -wi).collect();
        let eps = |q: f64| 1e-14 * (1.0 + q.abs());
        let mut roots = Vec::new();
        let first = poles[0];
        roots.push(bisect(s, first - reach, first - eps(first)));
        let last = poles[n - 1];
        roots.push(bisect(s, last + eps(last), last + reach));
        for k in 0..n - 1 {
            let (a, b) = (poles[k] + eps(poles[k]), poles[k + 1] - eps(poles[k + 1]));
            if !(a < b) {
                continue;
            }
            let (da, db) = (ds(a), ds(b));
            let m = if da < 0.0 && db > 0.0 { bisect(ds, a, b) } else if da >= 0.0 { a } else { b };
            let sm = s(m);
            if sm >= 0.0 {
                continue;
            }
            if s(a) > 0.0 {
                roots.push(bisect(s, a, m));
            }
            if s(b) > 0.0 {
                roots.push(bisect(s, m, b));
            }
        }
        for nu in roots {
            let mut x = vec![0.0; n];
            for i in 0..n {
                let c = -ht[i] / (w[i] + nu);
                for (r, xr) in x.iter_mut().enumerate() {
                    *xr += c * v[(r, i)];
                }
            }
            to_sphere(&mut x);
            xs.push(x);
        }
    }
    let points = xs.into_iter().map(|x| finish_point(inst, x)).collect::<Result<Vec<_>>>()?;
    Ok((CensusResult::from_points(&points, true, warnings), points))
}

/// Stationary points found by Newton from `n_starts` uniformly random
/// points on the sphere, deduplicated at distance `dedup_tol`.
pub fn enumerate_multistart(
    inst: &PSpinInstance,
    n_starts: usize,
    dedup_tol: f64,
    stream: &RandomStream,
) -> Result<(CensusResult, Vec<StationaryPoint>)> {
    if n_starts == 0 {
        return Err(Error::Domain("enumerate_multistart needs n_starts >= 1".into()));
    }
    let n = inst.n();
    let runs = par_samples(stream, n_starts, 16, |rng| {
        let mut x: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        to_sphere(&mut x);
        newton(inst, x, 80).map(|(x, _)| x)
    });
    let zero_field = inst.field.iter().all(|h| *h == 0.0);
    let mut found: Vec<Vec<f64>> = Vec::new();
    let mut at_half = 0;
    for (i, r) in runs.into_iter().enumerate() {
        if i == n_starts / 2 {
            at_half = found.len();
        }
        if let Some(x) = r {
            // without a field the stationary set is symmetric under x ↦ −x
            let mirror = zero_field.then(|| x.iter().map(|v| -v).collect::<Vec<f64>>());
            for x in std::iter::once(x).chain(mirror) {
                if !found.iter().any(|y| distance(&x, y) < dedup_tol) {
                    found.push(x);
                }
            }
        }
    }
    if n_starts < 2 {
        at_half = found.len();
    }
    if found.is_empty() {
        return Err(Error::Enumeration(format!("no Newton start converged out of {n_starts}")));
    }
    let saturated = found.len() == at_half;
    let points = found.into_iter().map(|x| finish_point(inst, x)).collect::<Result<Vec<_>>>()?;
    Ok((CensusResult::from_points(&points, saturated, Vec::new()), points))
}
