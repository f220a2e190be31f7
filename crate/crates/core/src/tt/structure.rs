//! Structural diagnostics for built tensors.

use super::core::Core;
use super::tensor::TtTensor;
use crate::error::Result;
use crate::linalg;

/// Diagonal weights `λ` if the core's gram matrix is diagonal with positive
/// integer entries, `None` otherwise. Left-side cores use the column gram
/// `Σ_i G_iᵀ G_i`, right-side cores the row gram `Σ_i G_i G_iᵀ`.
pub fn orthogonality_weights(core: &Core, right_side: bool) -> Option<Vec<u64>> {
    let [r, n, c] = core.shape();
    let dim = if right_side { r } else { c };
    let mut gram = vec![0.0f64; dim * dim];
    for i in 0..n {
        let e = core.entries(i);
        // group by the contracted index
        let mut by: std::collections::HashMap<usize, Vec<(usize, f64)>> = std::collections::HashMap::new();
        for (x, y, v) in e {
            if right_side {
                by.entry(y).or_default().push((x, v));
            } else {
                by.entry(x).or_default().push((y, v));
            }
        }
        for list in by.values() {
            for &(a, va) in list {
                for &(b, vb) in list {
                    gram[a * dim + b] += va * vb;
                }
            }
        }
    }
    let mut lambda = Vec::with_capacity(dim);
    for a in 0..dim {
        for b in 0..dim {
            let g = gram[a * dim + b];
            if a == b {
                if g <= 0.0 || g.fract() != 0.0 {
                    return None;
                }
                lambda.push(g as u64);
            } else if g != 0.0 {
                return None;
            }
        }
    }
    Some(lambda)
}

/// First side core (0-based) that fails the near-orthogonality property, if
/// any. The middle core is exempt.
pub fn check_near_orthogonal(t: &TtTensor) -> std::result::Result<(), usize> {
    for k in 0..t.dim() {
        if k == t.middle() {
            continue;
        }
        if orthogonality_weights(t.core(k), k > t.middle()).is_none() {
            return Err(k);
        }
    }
    Ok(())
}

/// First side core that is not a sparse selection core, if any.
pub fn check_selection_structure(t: &TtTensor) -> std::result::Result<(), usize> {
    for k in 0..t.dim() {
        if k == t.middle() {
            continue;
        }
        let ok = t.core(k).as_sparse().is_some_and(|s| s.has_selection_structure());
        if !ok {
            return Err(k);
        }
    }
    Ok(())
}

/// Numerical ranks of every unfolding of a small tensor, compared against
/// the stored ranks. A stored rank equal to the unfolding rank means the
/// representation is optimal at that bond.
pub fn unfolding_ranks(t: &TtTensor, cap: usize) -> Result<Vec<usize>> {
    let full = t.full(cap)?;
    let sizes = t.mode_sizes();
    let mut out = vec![1];
    let mut rows = 1usize;
    for &n in &sizes[..sizes.len() - 1] {
        rows *= n;
        let cols = full.len() / rows;
        let svd = linalg::thin_svd(rows, cols, &full)?;
        let smax = svd.s.first().copied().unwrap_or(0.0);
        out.push(svd.s.iter().filter(|&&s| smax > 0.0 && s >= 1e-13 * smax).count().max(1));
    }
    out.push(1);
    Ok(out)
}
