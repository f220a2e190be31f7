//! TT rounding.
//!
//! Cores that are 0/1 selection matrices with one unit per row are already
//! orthogonal up to a diagonal: `Σ_i G_iᵀ Λ G_i` stays diagonal with integer
//! entries that count how many index prefixes reach each state. Rounding
//! therefore skips the orthogonalization sweep over that prefix and instead
//! scales each unfolding by `√Λ` before the SVD.

use super::core::{Core, DenseCore, Orientation};
use super::tensor::TtTensor;
use crate::error::{Error, Result};
use crate::linalg;

/// Relative cutoff below which singular values count as exact zeros.
pub const ZERO_CUTOFF: f64 = 1e-13;

/// Number of leading cores with the left selection structure.
pub fn selection_prefix(t: &TtTensor) -> usize {
    t.cores()
        .iter()
        .take(t.dim().saturating_sub(1))
        .take_while(|c| {
            c.as_sparse()
                .is_some_and(|s| s.orientation() == Orientation::Left && s.has_selection_structure())
        })
        .count()
}

fn keep_rank(s: &[f64], delta2: f64) -> usize {
    let Some(&smax) = s.first() else { return 1 };
    if smax == 0.0 {
        return 1;
    }
    let mut r = s.iter().take_while(|&&v| v >= ZERO_CUTOFF * smax).count();
    let mut tail = 0.0;
    while r > 1 && tail + s[r - 1] * s[r - 1] <= delta2 {
        tail += s[r - 1] * s[r - 1];
        r -= 1;
    }
    r.max(1)
}

/// Rounds `t` to relative accuracy `eps`. With `eps = 0` only numerically
/// zero singular values are dropped. The result has dense cores and its norm
/// sits in the first core.
pub fn tt_round(t: &TtTensor, eps: f64) -> Result<TtTensor> {
    if !(eps >= 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be nonnegative, got {eps}")));
    }
    let t = t.apply_factors()?;
    let d = t.dim();
    if d == 1 {
        return TtTensor::new(vec![Core::Dense(t.core(0).to_dense())], 0);
    }
    let p = selection_prefix(&t);

    // Λ counts over the selection prefix.
    let mut gram: Vec<Vec<f64>> = vec![vec![1.0]];
    for k in 0..p {
        let s = t.core(k).as_sparse().expect("prefix cores are sparse");
        let [_, n, c] = s.shape();
        let mut g = vec![0.0; c];
        for i in 0..n {
            for &(x, y) in s.coords(i) {
                g[y as usize] += gram[k][x as usize];
            }
        }
        gram.push(g);
    }

    let mut cores: Vec<Core> = t.cores().to_vec();
    // Orthogonalize the remaining cores left to right, keeping the carry in
    // the next core.
    for k in p..d - 1 {
        let dc = cores[k].to_dense();
        let [r, n, c] = dc.shape();
        let g = &gram[k];
        let mut m = dc.into_data();
        for x in 0..r {
            let sc = g[x].sqrt();
            for v in &mut m[x * n * c..(x + 1) * n * c] {
                *v *= sc;
            }
        }
        let (mut q, rr, kq) = linalg::thin_qr(r * n, c, &m);
        for x in 0..r {
            let inv = if g[x] > 0.0 { 1.0 / g[x].sqrt() } else { 0.0 };
            for v in &mut q[x * n * kq..(x + 1) * n * kq] {
                *v *= inv;
            }
        }
        cores[k] = Core::Dense(DenseCore::new([r, n, kq], q)?);
        let nx = cores[k + 1].to_dense();
        let [_, n2, c2] = nx.shape();
        let merged = linalg::matmul(kq, c, n2 * c2, &rr, nx.data());
        cores[k + 1] = Core::Dense(DenseCore::new([kq, n2, c2], merged)?);
        if k + 1 >= gram.len() {
            gram.push(vec![1.0; kq]);
        } else {
            gram[k + 1] = vec![1.0; kq];
        }
    }
    while gram.len() < d {
        gram.push(vec![1.0; cores[gram.len()].shape()[0]]);
    }

    let centre = cores[d - 1].to_dense();
    let norm2: f64 = {
        let [r, n, c] = centre.shape();
        let mut s = 0.0;
        for x in 0..r {
            for j in 0..n * c {
                let v = centre.data()[x * n * c + j];
                s += gram[d - 1][x] * v * v;
            }
        }
        s
    };
    let delta2 = if eps > 0.0 { eps * eps * norm2 / (d - 1) as f64 } else { 0.0 };

    for k in (1..d).rev() {
        let dc = cores[k].to_dense();
        let [r, n, c] = dc.shape();
        let g = &gram[k];
        let mut m = dc.into_data();
        for x in 0..r {
            let sc = g[x].sqrt();
            for v in &mut m[x * n * c..(x + 1) * n * c] {
                *v *= sc;
            }
        }
        let svd = linalg::thin_svd(r, n * c, &m)?;
        let rk = keep_rank(&svd.s, delta2).min(svd.k.max(1));
        let vt = if svd.k == 0 { vec![0.0; n * c] } else { svd.vt[..rk * n * c].to_vec() };
        cores[k] = Core::Dense(DenseCore::new([rk, n, c], vt)?);
        // carry = Λ^{-1/2} U Σ, r × rk
        let mut carry = vec![0.0; r * rk];
        for x in 0..r {
            let inv = if g[x] > 0.0 { 1.0 / g[x].sqrt() } else { 0.0 };
            for j in 0..rk.min(svd.k) {
                carry[x * rk + j] = inv * svd.u[x * svd.k + j] * svd.s[j];
            }
        }
        cores[k - 1] = absorb_right(&cores[k - 1], &carry, rk)?;
    }
    Ok(TtTensor::new(cores, 0)?.with_middle(0))
}

/// `G(:, i, :) · carry` for every slice.
fn absorb_right(core: &Core, carry: &[f64], rk: usize) -> Result<Core> {
    let [r, n, c] = core.shape();
    match core {
        Core::Sparse(s) => {
            let mut out = DenseCore::zeros([r, n, rk]);
            for i in 0..n {
                for (x, y, v) in s.entries(i) {
                    for j in 0..rk {
                        *out.get_mut(x, i, j) += v * carry[y * rk + j];
                    }
                }
            }
            Ok(Core::Dense(out))
        }
        Core::Dense(dc) => {
            let data = linalg::matmul(r * n, c, rk, dc.data(), carry);
            Ok(Core::Dense(DenseCore::new([r, n, rk], data)?))
        }
    }
}
