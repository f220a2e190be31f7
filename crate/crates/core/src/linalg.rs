//! Thin wrappers over faer working on row-major buffers.

use crate::error::{Error, Result};
use faer::Mat;

fn to_mat(rows: usize, cols: usize, data: &[f64]) -> Mat<f64> {
    Mat::from_fn(rows, cols, |i, j| data[i * cols + j])
}

fn from_mat(m: faer::MatRef<'_, f64>, cols: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(m.nrows() * cols);
    for i in 0..m.nrows() {
        for j in 0..cols {
            out.push(m[(i, j)]);
        }
    }
    out
}

pub(crate) struct Svd {
    /// rows × k
    pub u: Vec<f64>,
    pub s: Vec<f64>,
    /// k × cols
    pub vt: Vec<f64>,
    pub k: usize,
}

pub(crate) fn thin_svd(rows: usize, cols: usize, data: &[f64]) -> Result<Svd> {
    let k = rows.min(cols);
    if k == 0 {
        return Ok(Svd { u: vec![], s: vec![], vt: vec![], k: 0 });
    }
    let a = to_mat(rows, cols, data);
    let svd = a.thin_svd().map_err(|e| Error::LinAlg(format!("{e:?}")))?;
    let s: Vec<f64> = (0..k).map(|i| svd.S().column_vector()[i]).collect();
    let u = from_mat(svd.U(), k);
    let v = svd.V();
    let mut vt = vec![0.0; k * cols];
    for i in 0..k {
        for j in 0..cols {
            vt[i * cols + j] = v[(j, i)];
        }
    }
    Ok(Svd { u, s, vt, k })
}

/// Thin QR of a row-major `rows × cols` matrix; returns `(Q, R, k)` with
/// `Q: rows × k`, `R: k × cols`.
pub(crate) fn thin_qr(rows: usize, cols: usize, data: &[f64]) -> (Vec<f64>, Vec<f64>, usize) {
    let k = rows.min(cols);
    if k == 0 {
        return (vec![], vec![], 0);
    }
    let a = to_mat(rows, cols, data);
    let qr = a.qr();
    let q = qr.compute_thin_Q();
    let r = qr.thin_R();
    (from_mat(q.as_ref(), k), from_mat(r, cols), k)
}

/// Row-major `a (m × k) · b (k × n)`.
pub(crate) fn matmul(m: usize, k: usize, n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    if m == 0 || n == 0 {
        return vec![0.0; m * n];
    }
    if m * k * n < 4096 {
        let mut out = vec![0.0; m * n];
        for i in 0..m {
            for p in 0..k {
                let x = a[i * k + p];
                if x == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += x * b[p * n + j];
                }
            }
        }
        return out;
    }
    let c = to_mat(m, k, a) * to_mat(k, n, b);
    from_mat(c.as_ref(), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svd_reconstructs() {
        let a = [3.0, 1.0, 0.0, 1.0, 2.0, 4.0];
        let s = thin_svd(2, 3, &a).unwrap();
        for i in 0..2 {
            for j in 0..3 {
                let v: f64 = (0..s.k).map(|p| s.u[i * s.k + p] * s.s[p] * s.vt[p * 3 + j]).sum();
                assert!((v - a[i * 3 + j]).abs() < 1e-12);
            }
        }
        assert!(s.s[0] >= s.s[1]);
    }

    #[test]
    fn qr_reconstructs() {
        let a = [1.0, 2.0, 3.0, 4.0, 5.0, 7.0];
        let (q, r, k) = thin_qr(3, 2, &a);
        let back = matmul(3, k, 2, &q, &r);
        for (x, y) in back.iter().zip(a.iter()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn matmul_paths_agree() {
        let (m, k, n) = (20, 30, 25);
        let a: Vec<f64> = (0..m * k).map(|i| ((i * 7) % 11) as f64 - 5.0).collect();
        let b: Vec<f64> = (0..k * n).map(|i| ((i * 5) % 13) as f64 - 6.0).collect();
        let fast = matmul(m, k, n, &a, &b);
        let mut slow = vec![0.0; m * n];
        for i in 0..m {
            for j in 0..n {
                for p in 0..k {
                    slow[i * n + j] += a[i * k + p] * b[p * n + j];
                }
            }
        }
        assert_eq!(fast, slow);
    }
}
