use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::numerics::rng::RandomStream;
use crate::sphere::PSpinSpec;

pub const MAX_N_P2: usize = 64;
pub const MAX_N_P3: usize = 12;

/// One draw of the p-spin energy V(x) = −Σ J_{i1..ip} x_{i1}..x_{ip} − h·x.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PSpinInstance {
    pub spec: PSpinSpec,
    /// Dense row-major tensor of N^p independent entries, last index fastest.
    pub couplings: Vec<f64>,
    pub field: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub energy: f64,
    pub gradient: Vec<f64>,
    pub hessian: Matrix,
}

/// Draw couplings with variance J²/(pN^{p−1}) and a field with variance σ².
pub fn sample_instance(spec: &PSpinSpec, stream: &RandomStream) -> Result<PSpinInstance> {
    let n = spec.n;
    let max = match spec.p {
        2 => MAX_N_P2,
        3 => MAX_N_P3,
        p => return Err(Error::Unsupported(format!("dense p-spin instances need p <= 3, got {p}"))),
    };
    if n > max {
        return Err(Error::Unsupported(format!("N = {n} exceeds the dense bound {max} for p = {}", spec.p)));
    }
    let mut rng = stream.rng();
    let size = n.pow(spec.p as u32);
    let sd = spec.j / (spec.p as f64 * (n as f64).powi(spec.p as i32 - 1)).sqrt();
    let couplings = (0..size).map(|_| sd * rng.sample::<f64, _>(StandardNormal)).collect();
    let field = if spec.sigma == 0.0 {
        vec![0.0; n]
    } else {
        (0..n).map(|_| spec.sigma * rng.sample::<f64, _>(StandardNormal)).collect()
    };
    Ok(PSpinInstance { spec: *spec, couplings, field })
}

impl PSpinInstance {
    pub fn n(&self) -> usize {
        self.spec.n
    }

    /// Hessian of the coupling part, −∂_a∂_b Σ J x..x, symmetric by
    /// construction.
    fn coupling_hessian(&self, x: &[f64]) -> Matrix {
        let n = self.n();
        let j = &self.couplings;
        let mut h = Matrix::zeros(n, n);
        match self.spec.p {
            2 => {
                for a in 0..n {
                    for b in a..n {
                        let v = -(j[a * n + b] + j[b * n + a]);
                        h[(a, b)] = v;
                        h[(b, a)] = v;
                    }
                }
            }
            _ => {
                let idx = |i: usize, k: usize, l: usize| (i * n + k) * n + l;
                for a in 0..n {
                    for b in a..n {
                        let mut s = 0.0;
                        for (k, xk) in x.iter().enumerate() {
                            s += (j[idx(a, b, k)] + j[idx(b, a, k)] + j[idx(a, k, b)] + j[idx(b, k, a)]
                                + j[idx(k, a, b)]
                                + j[idx(k, b, a)])
                                * xk;
                        }
                        h[(a, b)] = -s;
                        h[(b, a)] = -s;
                    }
                }
            }
        }
        h
    }

    /// V, ∇V and ∇²V of the ambient polynomial at x.
    pub fn eval(&self, x: &[f64]) -> Evaluation {
        let p = self.spec.p as f64;
        let hessian = self.coupling_hessian(x);
        // Euler's relation for the homogeneous coupling part
        let hx = hessian.matvec(x);
        let mut gradient: Vec<f64> = hx.iter().map(|v| v / (p - 1.0)).collect();
        let mut energy = gradient.iter().zip(x).map(|(g, xi)| g * xi).sum::<f64>() / p;
        for ((g, h), xi) in gradient.iter_mut().zip(&self.field).zip(x) {
            *g -= h;
            energy -= h * xi;
        }
        Evaluation { energy, gradient, hessian }
    }

    /// Energy by direct summation over the tensor.
    pub fn energy_direct(&self, x: &[f64]) -> f64 {
        let n = self.n();
        let mut e = 0.0;
        for (flat, jv) in self.couplings.iter().enumerate() {
            let mut prod = *jv;
            let mut r = flat;
            for _ in 0..self.spec.p {
                prod *= x[r % n];
                r /= n;
            }
            e -= prod;
        }
        e - self.field.iter().zip(x).map(|(h, xi)| h * xi).sum::<f64>()
    }
}
