//! Exact rank reduction for tensors whose side cores are all left selection
//! matrices and whose middle core is the last one.
//!
//! States unreachable from the left are trimmed, then rows that behave
//! identically for every suffix are merged from right to left. The selection
//! structure survives, so the result can be multiplied and reduced again.

use super::core::{Core, DenseCore, Orientation, SparseCore};
use super::tensor::TtTensor;
use crate::error::{Error, Result};
use std::collections::HashMap;

fn zero_tensor(sizes: &[usize]) -> Result<TtTensor> {
    let d = sizes.len();
    let mut cores = Vec::with_capacity(d);
    for &n in &sizes[..d - 1] {
        cores.push(Core::Sparse(SparseCore::new([1, n, 1], Orientation::Left, vec![vec![(0, 0)]; n])?));
    }
    cores.push(Core::Dense(DenseCore::zeros([1, sizes[d - 1], 1])));
    TtTensor::new(cores, d - 1)
}

/// Trims unreachable states and merges indistinguishable ones. Entries are
/// unchanged.
pub fn reduce_exact(t: &TtTensor) -> Result<TtTensor> {
    let t = t.apply_factors()?;
    let d = t.dim();
    if t.middle() != d - 1 {
        return Err(Error::Unsupported("exact reduction needs the middle core last".into()));
    }
    let mut side: Vec<&SparseCore> = Vec::with_capacity(d - 1);
    for (k, c) in t.cores()[..d - 1].iter().enumerate() {
        match c.as_sparse() {
            Some(s) if s.orientation() == Orientation::Left && s.has_selection_structure() => side.push(s),
            _ => {
                return Err(Error::Unsupported(format!(
                    "exact reduction needs left selection cores, core {k} is not one"
                )))
            }
        }
    }
    let sizes = t.mode_sizes();

    // Forward reachability: reach[k][x] for bond k.
    let mut reach: Vec<Vec<bool>> = vec![vec![true]];
    for s in &side {
        let [_, n, c] = s.shape();
        let mut r = vec![false; c];
        let prev = reach.last().unwrap();
        for i in 0..n {
            for &(x, y) in s.coords(i) {
                if prev[x as usize] {
                    r[y as usize] = true;
                }
            }
        }
        reach.push(r);
    }

    // Backward classes. None marks rows that only ever produce zeros.
    let last = t.core(d - 1);
    let [rl, nl, _] = last.shape();
    let mut last_sig: Vec<Vec<(usize, u64)>> = vec![Vec::new(); rl];
    for i in 0..nl {
        for (x, _, v) in last.entries(i) {
            last_sig[x].push((i, v.to_bits()));
        }
    }
    let mut classes: Vec<Vec<Option<usize>>> = vec![Vec::new(); d];
    let mut reps: Vec<Vec<usize>> = vec![Vec::new(); d];
    {
        let mut ids: HashMap<Vec<(usize, u64)>, usize> = HashMap::new();
        let mut cls = vec![None; rl];
        for x in 0..rl {
            if !reach[d - 1][x] || last_sig[x].is_empty() {
                continue;
            }
            let sig = std::mem::take(&mut last_sig[x]);
            let next = ids.len();
            let id = *ids.entry(sig).or_insert_with(|| {
                reps[d - 1].push(x);
                next
            });
            cls[x] = Some(id);
        }
        classes[d - 1] = cls;
    }
    for k in (0..d - 1).rev() {
        let s = side[k];
        let [r, n, _] = s.shape();
        let mut sig: Vec<Vec<(u32, usize)>> = vec![Vec::new(); r];
        for i in 0..n {
            for &(x, y) in s.coords(i) {
                if let Some(c) = classes[k + 1][y as usize] {
                    sig[x as usize].push((i as u32, c));
                }
            }
        }
        let mut ids: HashMap<Vec<(u32, usize)>, usize> = HashMap::new();
        let mut cls = vec![None; r];
        for x in 0..r {
            if !reach[k][x] || sig[x].is_empty() {
                continue;
            }
            let sg = std::mem::take(&mut sig[x]);
            let next = ids.len();
            let id = *ids.entry(sg).or_insert_with(|| {
                reps[k].push(x);
                next
            });
            cls[x] = Some(id);
        }
        classes[k] = cls;
    }
    if classes[0][0].is_none() {
        return zero_tensor(&sizes);
    }

    let mut cores = Vec::with_capacity(d);
    for k in 0..d - 1 {
        let s = side[k];
        let n = s.shape()[1];
        let rows = reps[k].len();
        let cols = reps[k + 1].len();
        let mut row_of = vec![usize::MAX; s.shape()[0]];
        for (j, &x) in reps[k].iter().enumerate() {
            row_of[x] = j;
        }
        let slices = (0..n)
            .map(|i| {
                s.coords(i)
                    .iter()
                    .filter_map(|&(x, y)| {
                        let j = row_of[x as usize];
                        let c = classes[k + 1][y as usize]?;
                        (j != usize::MAX).then_some((j as u32, c as u32))
                    })
                    .collect()
            })
            .collect();
        cores.push(Core::Sparse(SparseCore::new([rows, n, cols], Orientation::Left, slices)?));
    }
    let rows = reps[d - 1].len();
    let new_last = match last {
        Core::Dense(dc) => Core::Dense(DenseCore::from_fn([rows, nl, 1], |j, i, _| dc.get(reps[d - 1][j], i, 0))),
        Core::Sparse(sc) => {
            let mut slices: Vec<Vec<(u32, u32, f64)>> = vec![Vec::new(); nl];
            let mut row_of = vec![usize::MAX; rl];
            for (j, &x) in reps[d - 1].iter().enumerate() {
                row_of[x] = j;
            }
            for (i, sl) in slices.iter_mut().enumerate() {
                for (x, y, v) in sc.entries(i) {
                    if row_of[x] != usize::MAX {
                        sl.push((row_of[x] as u32, y as u32, v));
                    }
                }
            }
            Core::Sparse(SparseCore::with_values([rows, nl, 1], sc.orientation(), slices)?)
        }
    };
    cores.push(new_last);
    TtTensor::new(cores, d - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tt::hadamard::hadamard;

    fn chain(d: usize, rank: usize) -> TtTensor {
        // Counts ones modulo `rank`, value 1 when the count is zero.
        let mut cores = Vec::new();
        for k in 0..d - 1 {
            let r = if k == 0 { 1 } else { rank };
            let slices = vec![
                (0..r).map(|x| (x as u32, x as u32)).collect(),
                (0..r).map(|x| (x as u32, ((x + 1) % rank) as u32)).collect(),
            ];
            cores.push(Core::Sparse(SparseCore::new([r, 2, rank], Orientation::Left, slices).unwrap()));
        }
        let r = if d == 1 { 1 } else { rank };
        cores.push(Core::Dense(DenseCore::from_fn([r, 2, 1], |x, i, _| ((x + i) % rank == 0) as u8 as f64)));
        TtTensor::new(cores, d - 1).unwrap()
    }

    #[test]
    fn reduction_keeps_entries() {
        let a = chain(6, 3);
        let b = chain(6, 2);
        let h = hadamard(&a, &b).unwrap();
        let r = reduce_exact(&h).unwrap();
        assert_eq!(r.full(1 << 10).unwrap(), h.full(1 << 10).unwrap());
        assert!(r.max_rank() <= 6);
        // self product collapses back
        let sq = reduce_exact(&hadamard(&a, &a).unwrap()).unwrap();
        assert_eq!(sq.ranks(), reduce_exact(&a).unwrap().ranks());
    }

    #[test]
    fn zero_tensor_collapses() {
        let mut cores = vec![Core::Sparse(
            SparseCore::new([1, 2, 2], Orientation::Left, vec![vec![(0, 0)], vec![(0, 1)]]).unwrap(),
        )];
        cores.push(Core::Dense(DenseCore::zeros([2, 2, 1])));
        let t = TtTensor::new(cores, 1).unwrap();
        let r = reduce_exact(&t).unwrap();
        assert_eq!(r.ranks(), &[1, 1, 1]);
        assert_eq!(r.full(4).unwrap(), vec![0.0; 4]);
    }
}
