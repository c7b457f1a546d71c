//! Small dense linear algebra: row-major matrices, LU solves, symmetric
//! tridiagonalization, implicit QL, Sturm bisection and cyclic Jacobi.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Self { rows: r, cols: c, data }
    }

    pub fn diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Largest |M_ij - M_ji| relative to the largest entry.
    pub fn asymmetry(&self) -> f64 {
        let scale = self.data.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..i {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst / scale
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Solve A x = b by LU with partial pivoting. `None` if A is singular.
pub fn lu_solve(a: &Matrix, b: &[f64]) -> Option<Vec<f64>> {
    let n = a.rows;
    let mut m = a.clone();
    let mut x = b.to_vec();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| m[(i, k)].abs().total_cmp(&m[(j, k)].abs()))?;
        if m[(p, k)].abs() < 1e-300 {
            return None;
        }
        if p != k {
            for j in 0..n {
                m.data.swap(k * n + j, p * n + j);
            }
            x.swap(k, p);
        }
        for i in k + 1..n {
            let f = m[(i, k)] / m[(k, k)];
            if f == 0.0 {
                continue;
            }
            for j in k..n {
                m[(i, j)] -= f * m[(k, j)];
            }
            x[i] -= f * x[k];
        }
    }
    for k in (0..n).rev() {
        let mut s = x[k];
        for j in k + 1..n {
            s -= m[(k, j)] * x[j];
        }
        x[k] = s / m[(k, k)];
    }
    if x.iter().all(|v| v.is_finite()) {
        Some(x)
    } else {
        None
    }
}

/// Householder reduction of a symmetric matrix to tridiagonal form.
/// Returns (diagonal, off-diagonal of length n-1).
pub fn tridiagonalize(a: &Matrix) -> (Vec<f64>, Vec<f64>) {
    let n = a.rows;
    let mut m = a.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    let mut v = vec![0.0; n];
    let mut w = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let norm: f64 = (k + 1..n).map(|i| m[(i, k)] * m[(i, k)]).sum::<f64>().sqrt();
        let x0 = m[(k + 1, k)];
        if norm == 0.0 {
            d[k] = m[(k, k)];
            e[k] = 0.0;
            continue;
        }
        let alpha = if x0 > 0.0 { -norm } else { norm };
        for i in 0..n {
            v[i] = 0.0;
        }
        for i in k + 1..n {
            v[i] = m[(i, k)];
        }
        v[k + 1] -= alpha;
        let vn: f64 = (k + 1..n).map(|i| v[i] * v[i]).sum::<f64>().sqrt();
        d[k] = m[(k, k)];
        e[k] = alpha;
        if vn == 0.0 {
            continue;
        }
        for i in k + 1..n {
            v[i] /= vn;
        }
        // w = A v on the trailing block, kk = v.w, u = 2w - 2 kk v
        let mut kk = 0.0;
        for i in k + 1..n {
            let mut s = 0.0;
            for j in k + 1..n {
                s += m[(i, j)] * v[j];
            }
            w[i] = s;
            kk += v[i] * s;
        }
        for i in k + 1..n {
            w[i] = 2.0 * w[i] - 2.0 * kk * v[i];
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[(i, j)] -= v[i] * w[j] + w[i] * v[j];
            }
        }
    }
    if n >= 2 {
        d[n - 2] = m[(n - 2, n - 2)];
        e[n - 2] = m[(n - 1, n - 2)];
    }
    if n >= 1 {
        d[n - 1] = m[(n - 1, n - 1)];
    }
    (d, e)
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL, ascending.
pub fn tridiag_eigenvalues(d: &[f64], e: &[f64]) -> Result<Vec<f64>> {
    let n = d.len();
    let mut d = d.to_vec();
    let mut e: Vec<f64> = e.to_vec();
    e.resize(n, 0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::EigenNoConvergence { sweeps: iter });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below x.
pub fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..d.len() {
        let e2 = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] };
        q = d[i] - x - if i == 0 { 0.0 } else { e2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (d[i].abs() + x.abs() + 1.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The k-th largest eigenvalue (k = 1 is the largest) by Sturm bisection.
pub fn tridiag_kth_largest(d: &[f64], e: &[f64], k: usize) -> f64 {
    let n = d.len();
    assert!(k >= 1 && k <= n);
    // Gershgorin bounds
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { e[i - 1].abs() } else { 0.0 } + if i + 1 < n { e[i].abs() } else { 0.0 };
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    // target: smallest x with count(< x) >= n - k + 1
    let want = n - k + 1;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(d, e, mid) >= want {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Eigenvalues (ascending) and eigenvectors (columns) by cyclic Jacobi.
pub fn jacobi_eigen(a: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    const MAX_SWEEPS: usize = 64;
    let n = a.rows;
    let mut m = a.clone();
    let mut v = Matrix::identity(n);
    let norm = m.frobenius().max(f64::MIN_POSITIVE);
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)] * m[(i, j)])
            .sum::<f64>()
            .sqrt();
        if off < 1e-12 * norm {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::EigenNoConvergence { sweeps: MAX_SWEEPS });
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let vals: Vec<f64> = idx.iter().map(|&i| m[(i, i)]).collect();
    let mut vecs = Matrix::zeros(n, n);
    for (c, &i) in idx.iter().enumerate() {
        for r in 0..n {
            vecs[(r, c)] = v[(r, i)];
        }
    }
    Ok((vals, vecs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_sym(n: usize, seed: u64) -> Matrix {
        // small LCG keeps this module free of RNG dependencies
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let x = next();
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
        }
        m
    }

    #[test]
    fn lu_solves() {
        let a = Matrix::from_rows(&[vec![0.0, 2.0, 1.0], vec![1.0, 1.0, 0.0], vec![3.0, 0.0, 1.0]]);
        let x = lu_solve(&a, &[3.0, 2.0, 4.0]).unwrap();
        for (xi, want) in x.iter().zip([1.0, 1.0, 1.0]) {
            assert!((xi - want).abs() < 1e-14);
        }
        assert!(lu_solve(&Matrix::zeros(2, 2), &[1.0, 1.0]).is_none());
    }

    #[test]
    fn tridiagonal_route_matches_jacobi() {
        for n in [1, 2, 3, 7, 20] {
            let m = sample_sym(n, n as u64);
            let (d, e) = tridiagonalize(&m);
            let a = tridiag_eigenvalues(&d, &e).unwrap();
            let (b, _) = jacobi_eigen(&m).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-12, "n = {n}");
            }
        }
    }

    #[test]
    fn jacobi_vectors_diagonalize() {
        let m = sample_sym(6, 3);
        let (vals, v) = jacobi_eigen(&m).unwrap();
        let mv = m.matmul(&v);
        for c in 0..6 {
            for r in 0..6 {
                assert!((mv[(r, c)] - vals[c] * v[(r, c)]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sturm_bisection_matches_ql() {
        let m = sample_sym(9, 11);
        let (d, e) = tridiagonalize(&m);
        let vals = tridiag_eigenvalues(&d, &e).unwrap();
        for k in 1..=9 {
            let x = tridiag_kth_largest(&d, &e, k);
            assert!((x - vals[9 - k]).abs() < 1e-12, "k = {k}");
        }
    }
}
