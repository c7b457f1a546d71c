//! The GOE Tracy-Widom distribution F1.
//!
//! F1(ζ) = exp{−½∫_ζ^∞ q − ½∫_ζ^∞ (x − ζ) q(x)² dx} with q the Hastings-McLeod
//! solution of q'' = xq + 2q³, q(x) ~ Ai(x) as x → ∞. The equation is
//! integrated backwards from the Airy boundary; the running integrals ride
//! along as extra state components. Beyond the table the Airy formulas
//! (right) and the asymptotic left tail (left, matched at the table end)
//! take over.

use std::f64::consts::{LN_2, SQRT_2};

use crate::error::{domain, Error, Result};
use crate::numerics::ode::{ode_solve, OdeOptions};
use crate::numerics::special::{airy_ai_integral_tail, airy_log_derivative, airy_pair, ln_airy_ai};

pub const ZETA_HI: f64 = 8.0;
/// Default lower table end. Shooting errors grow like e^{(2√2/3)|ζ|^{3/2}};
/// at −8 the solution is still accurate to about 1e-5, at −10 only to 1e-2.
pub const ZETA_LO: f64 = -8.0;
pub const GRID_STEP: f64 = 1.0 / 64.0;
pub const DEFAULT_TOL: f64 = 3e-15;
/// The constant entering the left-tail amplitude, −0.1654211437.
pub const ZETA_PRIME_CONST: f64 = -0.165_421_143_7;

/// ln A with ln A = −(169/96) ln 2 + ½·(−0.1654211437).
pub fn ln_tail_const_a() -> f64 {
    -169.0 / 96.0 * LN_2 + 0.5 * ZETA_PRIME_CONST
}

/// Hastings-McLeod solution and its running integrals on a descending grid.
#[derive(Debug, Clone)]
pub struct PainleveTable {
    pub grid: Vec<f64>,
    pub q: Vec<f64>,
    pub q_prime: Vec<f64>,
    /// ∫_ζ^∞ q
    pub i1: Vec<f64>,
    /// ∫_ζ^∞ (x − ζ) q²
    pub i2: Vec<f64>,
    /// ∫_ζ^∞ q²
    pub j: Vec<f64>,
}

/// Airy-boundary values (q, q', ∫q, ∫q², ∫xq²) at ζ, with q replaced by Ai.
fn airy_state(z: f64) -> [f64; 5] {
    let (a, ap) = airy_pair(z);
    let j = ap * ap - z * a * a;
    // ∫_z^∞ x Ai² = −(z² Ai² − z Ai'² + Ai Ai')/3
    let k = -(z * z * a * a - z * ap * ap + a * ap) / 3.0;
    [a, ap, airy_ai_integral_tail(z), j, k]
}

pub fn solve_painleve2(zeta_hi: f64, zeta_lo: f64, tol: f64) -> Result<PainleveTable> {
    if zeta_hi < 6.0 || zeta_lo < -10.0 || zeta_hi <= zeta_lo {
        return domain(format!(
            "solve_painleve2 needs zeta_hi >= 6, zeta_lo >= -10, zeta_hi > zeta_lo (got {zeta_hi}, {zeta_lo})"
        ));
    }
    if !(tol > 0.0) {
        return domain("solve_painleve2 needs tol > 0");
    }
    let n = ((zeta_hi - zeta_lo) / GRID_STEP).floor() as usize;
    let mut grid: Vec<f64> = (0..=n).map(|i| zeta_hi - i as f64 * GRID_STEP).collect();
    if grid[n] > zeta_lo + 1e-12 {
        grid.push(zeta_lo);
    }
    let y0 = airy_state(zeta_hi);
    let rhs = |x: f64, y: &[f64], d: &mut [f64]| {
        let q = y[0];
        d[0] = y[1];
        d[1] = x * q + 2.0 * q * q * q;
        d[2] = -q;
        d[3] = -q * q;
        d[4] = -x * q * q;
    };
    // q starts near 1e-8, so the error control must be relative
    let opts = OdeOptions { atol: 1e-30, ..OdeOptions::with_tol(tol) };
    let out = ode_solve(rhs, zeta_hi, &y0, &grid[1..], &opts).map_err(|e| match e {
        Error::StepUnderflow { x } => Error::BranchLost { zeta: x },
        other => other,
    })?;
    let mut t = PainleveTable {
        grid: grid.clone(),
        q: vec![y0[0]],
        q_prime: vec![y0[1]],
        i1: vec![y0[2]],
        i2: vec![y0[4] - zeta_hi * y0[3]],
        j: vec![y0[3]],
    };
    for (z, y) in grid[1..].iter().zip(&out) {
        let q = y[0];
        // Hastings-McLeod stays between 0 and √(−x/2) + O(1)
        if !(q > 0.0) || q > (0.5 * z.abs()).sqrt() + 1.0 {
            return Err(Error::BranchLost { zeta: *z });
        }
        t.q.push(q);
        t.q_prime.push(y[1]);
        t.i1.push(y[2]);
        t.i2.push(y[4] - z * y[3]);
        t.j.push(y[3]);
    }
    Ok(t)
}

/// Cubic Hermite interpolation on [x0, x1] from values and derivatives.
fn hermite(x0: f64, x1: f64, y0: f64, y1: f64, d0: f64, d1: f64, x: f64) -> f64 {
    let h = x1 - x0;
    let s = (x - x0) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    (2.0 * s3 - 3.0 * s2 + 1.0) * y0 + (s3 - 2.0 * s2 + s) * h * d0 + (-2.0 * s3 + 3.0 * s2) * y1 + (s3 - s2) * h * d1
}

/// Evaluator for F1, F1' and related log-derivatives.
#[derive(Debug, Clone)]
pub struct Tw1Evaluator {
    pub table: PainleveTable,
    pub tail_const_a: f64,
    ln_f1: Vec<f64>,
    /// ln F1(ζ_lo) − ln(left-tail formula at ζ_lo)
    left_shift: f64,
}

/// ln of the left-tail formula 2^{49/32} A |ζ|^{−1/16} exp{−|ζ|³/24 − |ζ|^{3/2}/(3√2)}.
fn ln_left_tail(z: f64) -> f64 {
    let u = z.abs();
    49.0 / 32.0 * LN_2 + ln_tail_const_a() - u.ln() / 16.0 - u * u * u / 24.0 - u.powf(1.5) / (3.0 * SQRT_2)
}

/// d/dζ and d²/dζ² of [`ln_left_tail`] (ζ < 0).
fn ln_left_tail_derivs(z: f64) -> (f64, f64) {
    let u = -z;
    let d1 = u * u / 8.0 + u.sqrt() / (2.0 * SQRT_2) + 1.0 / (16.0 * u);
    let d2 = -u / 4.0 - 1.0 / (4.0 * SQRT_2 * u.sqrt()) + 1.0 / (16.0 * u * u);
    (d1, d2)
}

/// Left tail of F1 (ζ ≤ −4).
pub fn f1_tail_left(zeta: f64) -> Result<f64> {
    if zeta > -4.0 {
        return domain(format!("f1_tail_left needs zeta <= -4, got {zeta}"));
    }
    Ok(ln_left_tail(zeta).exp())
}

/// Right-tail density ½Ai(ζ) of F1 (ζ ≥ 4).
pub fn f1_tail_right_density(zeta: f64) -> Result<f64> {
    if zeta < 4.0 {
        return domain(format!("f1_tail_right_density needs zeta >= 4, got {zeta}"));
    }
    Ok(0.5 * airy_pair(zeta).0)
}

impl Tw1Evaluator {
    /// Table on [−8, 8] with step 1/64 and local relative tolerance 3e-15.
    pub fn new() -> Result<Self> {
        Self::with_params(ZETA_HI, ZETA_LO, DEFAULT_TOL)
    }

    pub fn with_params(zeta_hi: f64, zeta_lo: f64, tol: f64) -> Result<Self> {
        let table = solve_painleve2(zeta_hi, zeta_lo, tol)?;
        let ln_f1: Vec<f64> = table.i1.iter().zip(&table.i2).map(|(a, b)| -0.5 * (a + b)).collect();
        let lo = *table.grid.last().expect("non-empty grid");
        let left_shift = ln_f1[ln_f1.len() - 1] - ln_left_tail(lo);
        Ok(Self { table, tail_const_a: ln_tail_const_a().exp(), ln_f1, left_shift })
    }

    pub fn zeta_hi(&self) -> f64 {
        self.table.grid[0]
    }

    pub fn zeta_lo(&self) -> f64 {
        self.table.grid[self.table.grid.len() - 1]
    }

    /// Interval index i with grid[i] ≥ ζ ≥ grid[i + 1].
    fn locate(&self, z: f64) -> usize {
        let g = &self.table.grid;
        let i = ((g[0] - z) / GRID_STEP).floor() as usize;
        i.min(g.len() - 2)
    }

    fn in_table(&self, z: f64) -> bool {
        z <= self.zeta_hi() && z >= self.zeta_lo()
    }

    /// (q, q', J) inside the table.
    fn interp_q(&self, z: f64) -> (f64, f64, f64) {
        let t = &self.table;
        let i = self.locate(z);
        let (x0, x1) = (t.grid[i], t.grid[i + 1]);
        let (q0, q1) = (t.q[i], t.q[i + 1]);
        let (p0, p1) = (t.q_prime[i], t.q_prime[i + 1]);
        let q = hermite(x0, x1, q0, q1, p0, p1, z);
        let pp0 = x0 * q0 + 2.0 * q0 * q0 * q0;
        let pp1 = x1 * q1 + 2.0 * q1 * q1 * q1;
        let qp = hermite(x0, x1, p0, p1, pp0, pp1, z);
        let j = hermite(x0, x1, t.j[i], t.j[i + 1], -q0 * q0, -q1 * q1, z);
        (q, qp, j)
    }

    /// ln F1(ζ) on the whole real line.
    pub fn ln_f1(&self, z: f64) -> f64 {
        if z > self.zeta_hi() {
            let s = airy_state(z);
            return -0.5 * (s[2] + s[4] - z * s[3]);
        }
        if z < self.zeta_lo() {
            return ln_left_tail(z) + self.left_shift;
        }
        let t = &self.table;
        let i = self.locate(z);
        let d0 = 0.5 * (t.q[i] + t.j[i]);
        let d1 = 0.5 * (t.q[i + 1] + t.j[i + 1]);
        hermite(t.grid[i], t.grid[i + 1], self.ln_f1[i], self.ln_f1[i + 1], d0, d1, z)
    }

    pub fn f1(&self, z: f64) -> f64 {
        self.ln_f1(z).exp()
    }

    /// F1 restricted to the table range.
    pub fn f1_in_table(&self, z: f64) -> Result<f64> {
        if !self.in_table(z) {
            return domain(format!("zeta = {z} outside the Painleve table [{}, {}]", self.zeta_lo(), self.zeta_hi()));
        }
        Ok(self.f1(z))
    }

    /// q(ζ): table value, Ai(ζ) to the right, √(−ζ/2) to the left.
    pub fn q(&self, z: f64) -> f64 {
        if z > self.zeta_hi() {
            return airy_pair(z).0;
        }
        if z < self.zeta_lo() {
            return (-0.5 * z).sqrt();
        }
        self.interp_q(z).0
    }

    /// (ln F1)'(ζ) = ½(q + ∫_ζ^∞ q²).
    pub fn dln_f1(&self, z: f64) -> f64 {
        if z > self.zeta_hi() {
            return 0.5 * self.ln_q_plus_j(z).exp();
        }
        if z < self.zeta_lo() {
            return ln_left_tail_derivs(z).0;
        }
        let (q, _, j) = self.interp_q(z);
        0.5 * (q + j)
    }

    /// ln(q + J) beyond the table, with q = Ai.
    fn ln_q_plus_j(&self, z: f64) -> f64 {
        let la = ln_airy_ai(z);
        let r = airy_log_derivative(z);
        // J/Ai = Ai (r² − z)
        la + (la.exp() * (r * r - z)).ln_1p()
    }

    /// ln F1'(ζ).
    pub fn ln_f1_prime(&self, z: f64) -> f64 {
        if z > self.zeta_hi() {
            return self.ln_f1(z) - LN_2 + self.ln_q_plus_j(z);
        }
        self.ln_f1(z) + self.dln_f1(z).ln()
    }

    /// F1'(ζ) = F1(ζ)·½(q(ζ) + ∫_ζ^∞ q²).
    pub fn f1_prime(&self, z: f64) -> f64 {
        self.ln_f1_prime(z).exp()
    }

    /// (ln F1')'(ζ) = ½(q + J) + (q' − q²)/(q + J).
    pub fn dln_f1_prime(&self, z: f64) -> f64 {
        if z > self.zeta_hi() {
            let la = ln_airy_ai(z);
            let a = la.exp();
            let r = airy_log_derivative(z);
            let ratio = 1.0 + a * (r * r - z);
            return 0.5 * a * ratio + (r - a) / ratio;
        }
        if z < self.zeta_lo() {
            let (d1, d2) = ln_left_tail_derivs(z);
            return d1 + d2 / d1;
        }
        let (q, qp, j) = self.interp_q(z);
        0.5 * (q + j) + (qp - q * q) / (q + j)
    }

    /// (ln F1')''(ζ) by central differences of the analytic first derivative.
    pub fn d2ln_f1_prime(&self, z: f64) -> f64 {
        let h = 1e-4 * (1.0 + z.abs());
        (self.dln_f1_prime(z + h) - self.dln_f1_prime(z - h)) / (2.0 * h)
    }
}
