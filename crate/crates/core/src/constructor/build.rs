use super::spec::{DerivativeSpec, State};
use super::table::StateTable;
use crate::error::{Error, Result};
use crate::tt::{Core, DenseCore, Orientation, SparseCore, TtTensor};
use std::collections::HashSet;

/// Default cap on the number of states at any bond.
pub const DEFAULT_MAX_STATES: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// Enumeration stops with [`Error::RankExplosion`] once a bond holds more
    /// states than this.
    pub max_states: usize,
}

impl Default for BuildOptions {
    /// Uses `CTT_MAX_STATES` from the environment when set, otherwise
    /// [`DEFAULT_MAX_STATES`].
    fn default() -> Self {
        let max_states = std::env::var("CTT_MAX_STATES")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_STATES);
        BuildOptions { max_states }
    }
}

fn collect_image<S: State>(
    spec: &DerivativeSpec<'_, S>,
    k: usize,
    from: &[S],
    bond: usize,
    cap: usize,
) -> Result<Vec<S>> {
    let mut seen: HashSet<S> = HashSet::new();
    for s in from {
        for i in 0..spec.mode_sizes()[k] {
            if let Some(o) = spec.apply(k, i, s) {
                seen.insert(o);
                if seen.len() > cap {
                    return Err(Error::RankExplosion { position: bond, cap });
                }
            }
        }
    }
    let mut v: Vec<S> = seen.into_iter().collect();
    v.sort_unstable();
    Ok(v)
}

/// Reachable states at every bond, sorted by the states' natural order.
pub fn enumerate_images<S: State>(spec: &DerivativeSpec<'_, S>, opts: &BuildOptions) -> Result<StateTable<S>> {
    let d = spec.dim();
    let l = spec.middle();
    let mut images: Vec<Vec<S>> = vec![Vec::new(); d + 1];
    images[0] = vec![spec.left_seed().clone()];
    images[d] = vec![spec.right_seed().clone()];
    for j in 1..=l {
        images[j] = collect_image(spec, j - 1, &images[j - 1], j, opts.max_states)?;
    }
    for j in (l + 1..d).rev() {
        images[j] = collect_image(spec, j, &images[j + 1], j, opts.max_states)?;
    }
    Ok(StateTable::from_images(images))
}

fn zero_tensor(sizes: &[usize], l: usize) -> Result<TtTensor> {
    let cores = sizes
        .iter()
        .enumerate()
        .map(|(k, &n)| {
            if k == l {
                Ok(Core::Dense(DenseCore::zeros([1, n, 1])))
            } else {
                let o = if k < l { Orientation::Left } else { Orientation::Right };
                Ok(Core::Sparse(SparseCore::new([1, n, 1], o, vec![vec![(0, 0)]; n])?))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    TtTensor::new(cores, l)
}

/// Emits the tensor described by `spec`, numbering states as in `table`.
pub fn build_tt<S: State>(spec: &DerivativeSpec<'_, S>, table: &StateTable<S>) -> Result<TtTensor> {
    let d = spec.dim();
    let l = spec.middle();
    if table.bonds() != d + 1 {
        return Err(Error::ShapeMismatch(format!(
            "state table has {} bonds but the derivative spec needs {}",
            table.bonds(),
            d + 1
        )));
    }
    if table.images().iter().any(Vec::is_empty) {
        return zero_tensor(spec.mode_sizes(), l);
    }
    let mut cores = Vec::with_capacity(d);
    for k in 0..d {
        let n = spec.mode_sizes()[k];
        let rows = table.image(k);
        let cols = table.image(k + 1);
        let shape = [rows.len(), n, cols.len()];
        if k == l {
            let mut core = DenseCore::zeros(shape);
            for (x, a) in rows.iter().enumerate() {
                for i in 0..n {
                    for (y, b) in cols.iter().enumerate() {
                        if let Some(v) = spec.apply_middle(i, a, b) {
                            *core.get_mut(x, i, y) = v;
                        }
                    }
                }
            }
            cores.push(Core::Dense(core));
            continue;
        }
        let mut slices: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        if k < l {
            for (x, s) in rows.iter().enumerate() {
                for (i, sl) in slices.iter_mut().enumerate() {
                    if let Some(o) = spec.apply(k, i, s) {
                        let y = table.index_of(k + 1, &o).ok_or(Error::MissingState { position: k + 1 })?;
                        sl.push((x as u32, y as u32));
                    }
                }
            }
            cores.push(Core::Sparse(SparseCore::new(shape, Orientation::Left, slices)?));
        } else {
            for (y, s) in cols.iter().enumerate() {
                for (i, sl) in slices.iter_mut().enumerate() {
                    if let Some(o) = spec.apply(k, i, s) {
                        let x = table.index_of(k, &o).ok_or(Error::MissingState { position: k })?;
                        sl.push((x as u32, y as u32));
                    }
                }
            }
            cores.push(Core::Sparse(SparseCore::new(shape, Orientation::Right, slices)?));
        }
    }
    TtTensor::new(cores, l)
}

impl<S: State> DerivativeSpec<'_, S> {
    /// Enumerates states with default options and builds the tensor.
    pub fn build(&self) -> Result<TtTensor> {
        self.build_with(&BuildOptions::default())
    }

    pub fn build_with(&self, opts: &BuildOptions) -> Result<TtTensor> {
        let table = enumerate_images(self, opts)?;
        build_tt(self, &table)
    }

    pub fn table(&self) -> Result<StateTable<S>> {
        enumerate_images(self, &BuildOptions::default())
    }
}
