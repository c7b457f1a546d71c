//! Eigenvalues of dense symmetric matrices.

use crate::error::{domain, Result};
use crate::linalg::{tridiag_eigenvalues, tridiagonalize, Matrix};

/// Ascending eigenvalues of a symmetric matrix (Householder reduction and
/// implicit QL).
pub fn eigen_sym(m: &Matrix) -> Result<Vec<f64>> {
    if m.rows != m.cols {
        return domain(format!("eigen_sym needs a square matrix, got {}x{}", m.rows, m.cols));
    }
    let norm = m.frobenius();
    if !norm.is_finite() {
        return domain("eigen_sym: non-finite entries");
    }
    if m.asymmetry() > 1e-12 * norm {
        return domain("eigen_sym: matrix is not symmetric");
    }
    let (d, e) = tridiagonalize(m);
    tridiag_eigenvalues(&d, &e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::sturm_count;
    use proptest::prelude::*;

    #[test]
    fn small_cases() {
        assert_eq!(eigen_sym(&Matrix::diag(&[3.0, 1.0, 2.0])).unwrap(), vec![1.0, 2.0, 3.0]);
        let v = eigen_sym(&Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]])).unwrap();
        assert!((v[0] + 1.0).abs() < 1e-15 && (v[1] - 1.0).abs() < 1e-15);
        assert!(eigen_sym(&Matrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]])).is_err());
    }

    fn char_poly(m: &Matrix, x: f64) -> f64 {
        // det(M - x) by Gaussian elimination with partial pivoting
        let n = m.rows;
        let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| m[(i, j)] - if i == j { x } else { 0.0 }).collect()).collect();
        let mut det = 1.0;
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs())).unwrap();
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            let piv = a[k][k];
            if piv == 0.0 {
                return 0.0;
            }
            det *= piv;
            for i in k + 1..n {
                let f = a[i][k] / piv;
                for j in k..n {
                    a[i][j] -= f * a[k][j];
                }
            }
        }
        det
    }

    #[test]
    fn matches_characteristic_polynomial_roots() {
        let rows = vec![
            vec![2.0, -1.0, 0.3, 0.5, 0.1],
            vec![-1.0, 1.0, 0.7, -0.2, 0.0],
            vec![0.3, 0.7, -0.5, 0.4, 1.1],
            vec![0.5, -0.2, 0.4, 0.9, -0.6],
            vec![0.1, 0.0, 1.1, -0.6, -1.3],
        ];
        let m = Matrix::from_rows(&rows);
        let ev = eigen_sym(&m).unwrap();
        // bracket each root between sign changes of det(M - x) found on a fine grid
        let mut roots = Vec::new();
        let mut x0 = -6.0;
        let mut f0 = char_poly(&m, x0);
        while x0 < 6.0 {
            let x1 = x0 + 1e-3;
            let f1 = char_poly(&m, x1);
            if f0 * f1 < 0.0 {
                let (mut lo, mut hi) = (x0, x1);
                for _ in 0..100 {
                    let mid = 0.5 * (lo + hi);
                    if char_poly(&m, mid) * char_poly(&m, lo) <= 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                roots.push(0.5 * (lo + hi));
            }
            x0 = x1;
            f0 = f1;
        }
        assert_eq!(roots.len(), 5);
        for (a, b) in ev.iter().zip(&roots) {
            assert!((a - b).abs() < 1e-8, "{a} {b}");
        }
        let (d, e) = tridiagonalize(&m);
        assert_eq!(sturm_count(&d, &e, 0.0), ev.iter().filter(|&&l| l < 0.0).count());
    }

    proptest! {
        #[test]
        fn trace_identities(entries in proptest::collection::vec(-3.0f64..3.0, 36), n in 1usize..=8) {
            let mut m = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..=i {
                    let v = entries[(i * 7 + j * 3) % 36] * (1.0 + (i + j) as f64 * 0.1);
                    m[(i, j)] = v;
                    m[(j, i)] = v;
                }
            }
            let ev = eigen_sym(&m).unwrap();
            prop_assert!(ev.windows(2).all(|w| w[0] <= w[1]));
            let tr = m.trace();
            let tr2 = m.matmul(&m).trace();
            let s1: f64 = ev.iter().sum();
            let s2: f64 = ev.iter().map(|l| l * l).sum();
            let scale = tr2.sqrt().max(1e-300);
            prop_assert!((s1 - tr).abs() <= 1e-9 * scale * (n as f64));
            prop_assert!((s2 - tr2).abs() <= 1e-9 * tr2.max(1e-300));
        }
    }
}
