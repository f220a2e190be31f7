use super::spec::{DerivativeSpec, State};
use super::table::StateTable;
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Merges states that no suffix of indices can tell apart.
///
/// Working from the last core leftwards, two states at a bond share a set
/// when every slice sends them to the same set (or both to `None`) at the
/// next bond; at the last bond they must give the same middle values. The
/// tensor built from the merged table has identical entries.
pub fn merge_indistinguishable<S: State>(spec: &DerivativeSpec<'_, S>, table: &StateTable<S>) -> Result<StateTable<S>> {
    let d = spec.dim();
    if spec.middle() + 1 != d {
        return Err(Error::Unsupported("state merging requires the middle core to be the last one".into()));
    }
    if table.bonds() != d + 1 {
        return Err(Error::ShapeMismatch("state table does not match the derivative spec".into()));
    }
    let seed = spec.right_seed().clone();
    let mut sets: Vec<Vec<Vec<S>>> = vec![Vec::new(); d + 1];
    let mut reps: Vec<Vec<S>> = vec![Vec::new(); d + 1];
    sets[d] = vec![vec![seed.clone()]];
    reps[d] = vec![seed.clone()];
    sets[0] = vec![table.image(0).to_vec()];
    reps[0] = table.image(0).to_vec();
    if d == 1 {
        return Ok(StateTable::from_sets(reps, sets));
    }

    let group = |keys: Vec<(Vec<u64>, S)>| -> Vec<Vec<S>> {
        let mut m: BTreeMap<Vec<u64>, Vec<S>> = BTreeMap::new();
        for (k, s) in keys {
            m.entry(k).or_default().push(s);
        }
        let mut v: Vec<Vec<S>> = m.into_values().collect();
        v.sort_by(|a, b| a[0].cmp(&b[0]));
        v
    };

    let n_last = spec.mode_sizes()[d - 1];
    let keys = table
        .image(d - 1)
        .iter()
        .map(|x| {
            let sig = (0..n_last)
                .map(|i| spec.apply_middle(i, x, &seed).unwrap_or(0.0).to_bits())
                .collect();
            (sig, x.clone())
        })
        .collect();
    sets[d - 1] = group(keys);

    for k in (1..d - 1).rev() {
        let mut index: std::collections::HashMap<&S, u64> = std::collections::HashMap::new();
        for (j, c) in sets[k + 1].iter().enumerate() {
            for s in c {
                index.insert(s, j as u64);
            }
        }
        let n = spec.mode_sizes()[k];
        let keys = table
            .image(k)
            .iter()
            .map(|x| {
                let sig = (0..n)
                    .map(|i| match spec.apply(k, i, x) {
                        Some(o) => index.get(&o).map_or(Err(k + 1), |&j| Ok(j + 1)),
                        None => Ok(0),
                    })
                    .collect::<std::result::Result<Vec<u64>, usize>>();
                sig.map(|s| (s, x.clone()))
            })
            .collect::<std::result::Result<Vec<_>, usize>>()
            .map_err(|position| Error::MissingState { position })?;
        sets[k] = group(keys);
    }
    for k in 1..d {
        reps[k] = sets[k].iter().map(|c| c[0].clone()).collect();
    }
    Ok(StateTable::from_sets(reps, sets))
}
