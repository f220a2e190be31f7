//! Greedy location of large or nonzero entries in nonnegative tensors.
//!
//! Indices are fixed from left to right. At step `k` each candidate slice is
//! scored by the sum of all entries that agree with the indices fixed so far,
//! which is cheap to read off once the suffix products of slice-summed cores
//! are known. For a nonnegative tensor a positive score guarantees that some
//! completion is nonzero, so the sweep never dead-ends.

use crate::error::{Error, Result};
use crate::tt::{eval_entry, Core, TtTensor};

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SearchResult {
    pub indices: Vec<usize>,
    pub value: f64,
}

/// `u = p · G(:, i, :)`.
fn row_times_slice(core: &Core, p: &[f64], i: usize) -> Vec<f64> {
    let mut u = vec![0.0; core.shape()[2]];
    for (x, y, v) in core.entries(i) {
        if p[x] != 0.0 {
            u[y] += p[x] * v;
        }
    }
    u
}

fn greedy(t: &TtTensor) -> Result<Option<SearchResult>> {
    let t = t.apply_factors()?;
    let d = t.dim();
    // suffix[k] = (Σ_i G_k) ... (Σ_i G_{d-1}) · 1, a vector over bond k.
    let mut suffix: Vec<Vec<f64>> = vec![Vec::new(); d + 1];
    suffix[d] = vec![1.0];
    for k in (0..d).rev() {
        let core = t.core(k);
        let [r, n, _] = core.shape();
        let mut s = vec![0.0; r];
        for i in 0..n {
            for (x, y, v) in core.entries(i) {
                s[x] += v * suffix[k + 1][y];
            }
        }
        suffix[k] = s;
    }
    let mut p = vec![1.0];
    let mut indices = Vec::with_capacity(d);
    for k in 0..d {
        let core = t.core(k);
        let mut best: Option<(usize, f64, Vec<f64>)> = None;
        for i in 0..core.shape()[1] {
            let u = row_times_slice(core, &p, i);
            let score: f64 = u.iter().zip(&suffix[k + 1]).map(|(a, b)| a * b).sum();
            if best.as_ref().is_none_or(|b| score > b.1) {
                best = Some((i, score, u));
            }
        }
        let (i, score, u) = best.expect("modes are nonempty");
        if score <= 0.0 {
            if k == 0 {
                return Ok(None);
            }
            return Err(Error::Precondition(format!(
                "no positive continuation at mode {k}; the tensor has negative entries"
            )));
        }
        indices.push(i);
        p = u;
    }
    let value = eval_entry(&t, &indices)?;
    if value <= 0.0 {
        return Err(Error::Precondition(format!(
            "greedy entry {indices:?} has value {value}; the tensor has negative entries"
        )));
    }
    Ok(Some(SearchResult { indices, value }))
}

/// Indices of a positive entry of a nonnegative tensor, or `None` when the
/// tensor is zero.
pub fn find_nonzero(t: &TtTensor) -> Result<Option<SearchResult>> {
    greedy(t)
}

/// Greedily chosen large entry of a nonnegative tensor. Exact on rank-one
/// tensors, not guaranteed maximal in general. `None` when the tensor is zero.
pub fn quasi_argmax(t: &TtTensor) -> Result<Option<SearchResult>> {
    let t = t.apply_factors()?;
    let d = t.dim();
    // Score slices by the largest completion reachable through each bond
    // state, assuming the remaining cores act independently per state.
    let mut best_suffix: Vec<Vec<f64>> = vec![Vec::new(); d + 1];
    best_suffix[d] = vec![1.0];
    for k in (0..d).rev() {
        let core = t.core(k);
        let [r, n, _] = core.shape();
        let mut s = vec![0.0f64; r];
        for i in 0..n {
            let mut acc = vec![0.0; r];
            for (x, y, v) in core.entries(i) {
                acc[x] += v * best_suffix[k + 1][y];
            }
            for (a, b) in s.iter_mut().zip(acc) {
                *a = a.max(b);
            }
        }
        best_suffix[k] = s;
    }
    let exact_on_selection = (0..d).all(|k| {
        k == t.middle() || t.core(k).as_sparse().is_some_and(|s| s.has_selection_structure())
    });
    if exact_on_selection {
        return greedy(&t);
    }
    let mut p = vec![1.0];
    let mut indices = Vec::with_capacity(d);
    for k in 0..d {
        let core = t.core(k);
        let mut best: Option<(usize, f64, Vec<f64>)> = None;
        for i in 0..core.shape()[1] {
            let u = row_times_slice(core, &p, i);
            let score: f64 = u.iter().zip(&best_suffix[k + 1]).map(|(a, b)| a * b).sum();
            if best.as_ref().is_none_or(|b| score > b.1) {
                best = Some((i, score, u));
            }
        }
        let (i, _, u) = best.expect("modes are nonempty");
        indices.push(i);
        p = u;
    }
    let value = eval_entry(&t, &indices)?;
    if value > 0.0 {
        return Ok(Some(SearchResult { indices, value }));
    }
    // The heuristic score can mislead on general cores; the sum-based sweep
    // still finds a positive entry whenever one exists.
    greedy(&t)
}
