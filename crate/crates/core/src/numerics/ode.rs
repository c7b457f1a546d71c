//! Adaptive Dormand-Prince 5(4) integrator.
//!
//! Steps are clipped so that every requested output abscissa is hit exactly;
//! integration may run in either direction.

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Smallest step allowed, relative to max(1, |x|).
    pub h_min_rel: f64,
    pub max_steps: usize,
}

impl OdeOptions {
    /// Local error per step ≤ tol in the mixed norm atol + rtol·|y| with
    /// atol = rtol = tol.
    pub fn with_tol(tol: f64) -> Self {
        Self { rtol: tol, atol: tol, h_min_rel: 1e-14, max_steps: 1_000_000 }
    }
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrate y' = rhs(x, y) from (x0, y0) and return the state at each point
/// of `grid`, which must be monotone and lie on one side of x0.
pub fn ode_solve<F>(mut rhs: F, x0: f64, y0: &[f64], grid: &[f64], opts: &OdeOptions) -> Result<Vec<Vec<f64>>>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    if !(opts.rtol > 0.0 && opts.atol > 0.0) {
        return domain("ode tolerances must be positive");
    }
    if grid.is_empty() {
        return Ok(Vec::new());
    }
    let dir = if grid[grid.len() - 1] >= x0 { 1.0 } else { -1.0 };
    let mut prev = x0;
    for &g in grid {
        if (g - prev) * dir < 0.0 || !g.is_finite() {
            return domain("ode output grid must be monotone away from x0");
        }
        prev = g;
    }
    let n = y0.len();
    let mut k = vec![vec![0.0; n]; 7];
    let mut y = y0.to_vec();
    let mut ytmp = vec![0.0; n];
    let mut ynew = vec![0.0; n];
    let mut x = x0;
    rhs(x, &y, &mut k[0]);
    let span = (grid[grid.len() - 1] - x0).abs();
    let mut h = (0.01 * span).clamp(1e-6, 0.1) * dir;
    let mut out = Vec::with_capacity(grid.len());
    let mut steps = 0usize;
    for &target in grid {
        while (target - x) * dir > 0.0 {
            steps += 1;
            if steps > opts.max_steps {
                return Err(Error::StepUnderflow { x });
            }
            let mut last = false;
            let h_free = h;
            if (x + h - target) * dir >= 0.0 {
                h = target - x;
                last = true;
            }
            for s in 1..7 {
                for i in 0..n {
                    let mut acc = y[i];
                    for j in 0..s {
                        acc += h * A[s][j] * k[j][i];
                    }
                    ytmp[i] = acc;
                }
                rhs(x + C[s] * h, &ytmp, &mut k[s]);
            }
            // 5th-order solution is the last stage argument
            ynew.copy_from_slice(&ytmp);
            let mut err = 0.0;
            for i in 0..n {
                let mut e = 0.0;
                for s in 0..7 {
                    e += E[s] * k[s][i];
                }
                let sc = opts.atol + opts.rtol * y[i].abs().max(ynew[i].abs());
                let r = h * e / sc;
                err += r * r;
            }
            let err = (err / n as f64).sqrt();
            if err.is_finite() && err <= 1.0 {
                x = if last { target } else { x + h };
                y.copy_from_slice(&ynew);
                k.swap(0, 6);
                let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                h = if last { h_free } else { h * fac };
            } else {
                let fac = if err.is_finite() { (0.9 * err.powf(-0.2)).clamp(0.1, 0.5) } else { 0.1 };
                h *= fac;
                let hmin = opts.h_min_rel * x.abs().max(1.0);
                if h.abs() < hmin {
                    return Err(Error::StepUnderflow { x });
                }
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}

/// Integrate from x0 to x1 and return the final state.
pub fn ode_solve_to<F>(rhs: F, x0: f64, y0: &[f64], x1: f64, tol: f64) -> Result<Vec<f64>>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let mut v = ode_solve(rhs, x0, y0, &[x1], &OdeOptions::with_tol(tol))?;
    Ok(v.pop().expect("one output point"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::special::airy_pair;

    #[test]
    fn exponential_growth() {
        let y = ode_solve_to(|_, y, d| d[0] = y[0], 0.0, &[1.0], 1.0, 1e-12).unwrap();
        assert!((y[0] - std::f64::consts::E).abs() < 1e-9);
    }

    #[test]
    fn decaying_mode_of_second_order_system() {
        let y = ode_solve_to(
            |_, y, d| {
                d[0] = y[1];
                d[1] = y[0];
            },
            0.0,
            &[1.0, -1.0],
            5.0,
            1e-13,
        )
        .unwrap();
        assert!((y[0] - (-5.0f64).exp()).abs() < 1e-8, "{}", y[0]);
    }

    #[test]
    fn airy_backwards_from_eight() {
        let (a, ap) = airy_pair(8.0);
        let y = ode_solve_to(
            |x, y, d| {
                d[0] = y[1];
                d[1] = x * y[0];
            },
            8.0,
            &[a, ap],
            0.0,
            1e-13,
        )
        .unwrap();
        assert!((y[0] - airy_pair(0.0).0).abs() < 1e-7, "{}", y[0]);
    }

    #[test]
    fn hits_grid_points_exactly() {
        let grid: Vec<f64> = (1..=10).map(|i| -0.3 * i as f64).collect();
        let out = ode_solve(|_, y, d| d[0] = -y[0], 0.0, &[1.0], &grid, &OdeOptions::with_tol(1e-12)).unwrap();
        for (g, y) in grid.iter().zip(&out) {
            assert!((y[0] - (-g).exp()).abs() < 1e-9 * (-g).exp());
        }
    }

    #[test]
    fn blow_up_is_reported() {
        // y' = y^2, y(0) = 1 blows up at x = 1
        let r = ode_solve_to(|_, y, d| d[0] = y[0] * y[0], 0.0, &[1.0], 2.0, 1e-10);
        assert!(matches!(r, Err(Error::StepUnderflow { .. })), "{r:?}");
    }

    #[test]
    fn rejects_non_monotone_grid() {
        let r = ode_solve(|_, y, d| d[0] = y[0], 0.0, &[1.0], &[1.0, 0.5], &OdeOptions::with_tol(1e-8));
        assert!(r.is_err());
    }
}
