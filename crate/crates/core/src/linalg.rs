//! Minimal dense linear algebra for small symmetric systems: a row-major
//! matrix, a cyclic Jacobi eigensolver and a Cholesky solver.

#![allow(clippy::needless_range_loop)] // indexed loops read naturally in matrix kernels

use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns `(eigenvalues, eigenvectors)` sorted by descending eigenvalue;
/// eigenvectors are the ROWS of the returned matrix.
pub(crate) fn symmetric_eigen(a: &DenseMatrix) -> (Vec<f64>, DenseMatrix) {
    assert_eq!(a.rows, a.cols, "matrix must be square");
    let n = a.rows;
    let mut b = a.clone();
    let mut v = DenseMatrix::identity(n);
    if n == 0 {
        return (Vec::new(), v);
    }

    let frobenius: f64 = b.data.iter().map(|x| x * x).sum::<f64>().sqrt();
    let tol = 1e-14 * frobenius.max(1e-300);
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += b.get(p, q) * b.get(p, q);
            }
        }
        if (2.0 * off).sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = b.get(p, q);
                if apq.abs() <= tol * 1e-2 {
                    continue;
                }
                let app = b.get(p, p);
                let aqq = b.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for i in 0..n {
                    let bip = b.get(i, p);
                    let biq = b.get(i, q);
                    b.set(i, p, c * bip - s * biq);
                    b.set(i, q, s * bip + c * biq);
                }
                for i in 0..n {
                    let bpi = b.get(p, i);
                    let bqi = b.get(q, i);
                    b.set(p, i, c * bpi - s * bqi);
                    b.set(q, i, s * bpi + c * bqi);
                }
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, c * vip - s * viq);
                    v.set(i, q, s * vip + c * viq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        b.get(j, j)
            .partial_cmp(&b.get(i, i))
            .expect("eigenvalues are finite")
            .then(i.cmp(&j))
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| b.get(i, i)).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for (row, &col) in order.iter().enumerate() {
        for i in 0..n {
            vectors.set(row, i, v.get(i, col));
        }
    }
    (eigenvalues, vectors)
}

/// Solve `A x = b` for symmetric positive definite `A` via Cholesky.
pub(crate) fn cholesky_solve(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    assert_eq!(a.rows, a.cols, "matrix must be square");
    assert_eq!(a.rows, b.len(), "dimension mismatch");
    let n = a.rows;
    let mut l = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a.get(i, j);
            for k in 0..j {
                sum -= l.get(i, k) * l.get(j, k);
            }
            if i == j {
                if sum <= 0.0 {
                    return Err(Error::Numerical(
                        "matrix is not positive definite".to_string(),
                    ));
                }
                l.set(i, j, sum.sqrt());
            } else {
                l.set(i, j, sum / l.get(j, j));
            }
        }
    }
    // Forward then backward substitution.
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut sum = b[i];
        for k in 0..i {
            sum -= l.get(i, k) * y[k];
        }
        y[i] = sum / l.get(i, i);
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut sum = y[i];
        for k in (i + 1)..n {
            sum -= l.get(k, i) * x[k];
        }
        x[i] = sum / l.get(i, i);
    }
    Ok(x)
}

/// Max-norm residual of `A x - b`.
pub(crate) fn residual_inf(a: &DenseMatrix, x: &[f64], b: &[f64]) -> f64 {
    (0..a.rows)
        .map(|i| {
            let ax: f64 = a.row(i).iter().zip(x.iter()).map(|(m, v)| m * v).sum();
            (ax - b[i]).abs()
        })
        .fold(0.0, f64::max)
}
