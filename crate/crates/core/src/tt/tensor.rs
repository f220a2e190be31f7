use super::core::{Core, DenseCore, Matrix, Orientation, SparseCore};
use crate::error::{Error, Result};

/// Tensor train: a chain of cores, optionally with per-mode TT-Tucker factors.
///
/// A factor for mode `k` is an `inner × external` matrix `A_k`; the tensor
/// entry at external index `i` uses the combination `Σ_j A_k(j, i) G_k(:, j, :)`
/// of inner slices.
#[derive(Clone, Debug, PartialEq)]
pub struct TtTensor {
    cores: Vec<Core>,
    ranks: Vec<usize>,
    middle: usize,
    factors: Vec<Option<Matrix>>,
}

impl TtTensor {
    /// Assembles a tensor, checking that adjacent core shapes agree and the
    /// boundary ranks are 1. `middle` is the 0-based position of the core that
    /// joins the left and right sweeps.
    pub fn new(cores: Vec<Core>, middle: usize) -> Result<Self> {
        if cores.is_empty() {
            return Err(Error::InvalidArgument("a tensor train needs at least one core".into()));
        }
        if middle >= cores.len() {
            return Err(Error::InvalidArgument(format!(
                "middle index {middle} outside 0..{}",
                cores.len()
            )));
        }
        let mut ranks = Vec::with_capacity(cores.len() + 1);
        ranks.push(cores[0].shape()[0]);
        for (k, c) in cores.iter().enumerate() {
            let s = c.shape();
            if s[0] != ranks[k] {
                return Err(Error::ShapeMismatch(format!(
                    "core {k} has {} rows but the previous core has {} columns",
                    s[0], ranks[k]
                )));
            }
            if s[1] == 0 || s[0] == 0 || s[2] == 0 {
                return Err(Error::ShapeMismatch(format!("core {k} has an empty dimension {s:?}")));
            }
            ranks.push(s[2]);
        }
        if ranks[0] != 1 || ranks[cores.len()] != 1 {
            return Err(Error::ShapeMismatch(format!("boundary ranks must be 1, got {ranks:?}")));
        }
        let d = cores.len();
        Ok(TtTensor { cores, ranks, middle, factors: vec![None; d] })
    }

    /// Attaches TT-Tucker factors, one optional `inner × external` matrix per
    /// mode.
    pub fn with_factors(mut self, factors: Vec<Option<Matrix>>) -> Result<Self> {
        if factors.len() != self.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{} factors for {} modes",
                factors.len(),
                self.dim()
            )));
        }
        for (k, f) in factors.iter().enumerate() {
            if let Some(a) = f {
                if a.rows() != self.cores[k].shape()[1] || a.cols() == 0 {
                    return Err(Error::ShapeMismatch(format!(
                        "factor {k} is {}x{} but core {k} has {} slices",
                        a.rows(),
                        a.cols(),
                        self.cores[k].shape()[1]
                    )));
                }
            }
        }
        self.factors = factors;
        Ok(self)
    }

    /// Rank-1 tensor whose entries are all `value` (the value sits in the
    /// first core).
    pub fn constant(mode_sizes: &[usize], value: f64) -> Result<Self> {
        let cores = mode_sizes
            .iter()
            .enumerate()
            .map(|(k, &n)| {
                let v = if k == 0 { value } else { 1.0 };
                Core::Dense(DenseCore::from_fn([1, n, 1], |_, _, _| v))
            })
            .collect();
        TtTensor::new(cores, 0)
    }

    /// Rank-1 tensor `w_1 ⊗ … ⊗ w_d`.
    pub fn rank_one(weights: &[Vec<f64>]) -> Result<Self> {
        let cores = weights
            .iter()
            .map(|w| Core::Dense(DenseCore::from_fn([1, w.len(), 1], |_, i, _| w[i])))
            .collect();
        TtTensor::new(cores, 0)
    }

    pub fn dim(&self) -> usize {
        self.cores.len()
    }

    pub fn cores(&self) -> &[Core] {
        &self.cores
    }

    pub fn core(&self, k: usize) -> &Core {
        &self.cores[k]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn max_rank(&self) -> usize {
        self.ranks.iter().copied().max().unwrap_or(1)
    }

    pub fn middle(&self) -> usize {
        self.middle
    }

    pub fn factors(&self) -> &[Option<Matrix>] {
        &self.factors
    }

    pub fn factor(&self, k: usize) -> Option<&Matrix> {
        self.factors[k].as_ref()
    }

    pub fn has_factors(&self) -> bool {
        self.factors.iter().any(Option::is_some)
    }

    /// External mode sizes (factor column counts where factors exist).
    pub fn mode_sizes(&self) -> Vec<usize> {
        (0..self.dim()).map(|k| self.mode_size(k)).collect()
    }

    pub fn mode_size(&self, k: usize) -> usize {
        match &self.factors[k] {
            Some(a) => a.cols(),
            None => self.cores[k].shape()[1],
        }
    }

    /// Number of entries, saturating at `u128::MAX`.
    pub fn num_entries(&self) -> u128 {
        self.mode_sizes().iter().fold(1u128, |a, &n| a.saturating_mul(n as u128))
    }

    /// Replaces mode `k` by a single external index whose slice is the
    /// combination `Σ_i coeffs[i] · slice_i` of the current external slices.
    pub fn restrict_mode(&self, k: usize, coeffs: &[f64]) -> Result<Self> {
        if k >= self.dim() {
            return Err(Error::InvalidArgument(format!("mode {k} outside 0..{}", self.dim())));
        }
        let n = self.mode_size(k);
        if coeffs.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for mode {k} of size {n}",
                coeffs.len()
            )));
        }
        let col = match &self.factors[k] {
            Some(a) => a.mul_vec(coeffs),
            None => coeffs.to_vec(),
        };
        let inner = col.len();
        let mut factors = self.factors.clone();
        factors[k] = Some(Matrix::new(inner, 1, col)?);
        self.clone().with_factors(factors)
    }

    /// Keeps only external slice `i` of mode `k` (the mode becomes size 1).
    pub fn fix_slice(&self, k: usize, i: usize) -> Result<Self> {
        let n = if k < self.dim() { self.mode_size(k) } else { 0 };
        if i >= n {
            return Err(Error::IndexOutOfRange { mode: k, index: i, size: n });
        }
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        self.restrict_mode(k, &e)
    }

    /// Contracts every factor into its core, giving a plain tensor with the
    /// same entries.
    pub fn apply_factors(&self) -> Result<Self> {
        if !self.has_factors() {
            return Ok(self.clone());
        }
        let mut cores = Vec::with_capacity(self.dim());
        for (k, core) in self.cores.iter().enumerate() {
            let Some(a) = &self.factors[k] else {
                cores.push(core.clone());
                continue;
            };
            let [r, _, c] = core.shape();
            let m = a.cols();
            let new = match core {
                Core::Dense(dc) => Core::Dense(DenseCore::from_fn([r, m, c], |x, i, y| {
                    (0..a.rows()).map(|j| a.get(j, i) * dc.get(x, j, y)).sum()
                })),
                Core::Sparse(sc) => {
                    let selection = (0..m).all(|i| {
                        let nz: Vec<f64> = (0..a.rows()).map(|j| a.get(j, i)).filter(|&v| v != 0.0).collect();
                        nz.len() <= 1 && nz.iter().all(|&v| v == 1.0)
                    });
                    let mut slices = Vec::with_capacity(m);
                    for i in 0..m {
                        let mut acc = std::collections::BTreeMap::new();
                        for j in 0..a.rows() {
                            let w = a.get(j, i);
                            if w == 0.0 {
                                continue;
                            }
                            for (x, y, v) in sc.entries(j) {
                                *acc.entry((x as u32, y as u32)).or_insert(0.0) += w * v;
                            }
                        }
                        slices.push(acc.into_iter().map(|((x, y), v)| (x, y, v)).collect());
                    }
                    let o = if selection { sc.orientation() } else { Orientation::General };
                    Core::Sparse(SparseCore::with_values([r, m, c], o, slices)?)
                }
            };
            cores.push(new);
        }
        TtTensor::new(cores, self.middle)
    }

    /// Full tensor in row-major order (last index fastest), computed by
    /// explicit multiplication of core unfoldings. Refuses more than `cap`
    /// entries.
    pub fn full(&self, cap: usize) -> Result<Vec<f64>> {
        let total = self.num_entries();
        if total > cap as u128 {
            return Err(Error::Budget(format!("{total} entries exceed the cap of {cap}")));
        }
        let t = self.apply_factors()?;
        // acc holds a (prefix entries × r_k) matrix.
        let mut acc = vec![1.0];
        let mut rows = 1usize;
        for core in &t.cores {
            let d = core.to_dense();
            let [r, n, c] = d.shape();
            let mut next = vec![0.0; rows * n * c];
            for p in 0..rows {
                for x in 0..r {
                    let a = acc[p * r + x];
                    if a == 0.0 {
                        continue;
                    }
                    for i in 0..n {
                        for y in 0..c {
                            next[(p * n + i) * c + y] += a * d.get(x, i, y);
                        }
                    }
                }
            }
            acc = next;
            rows *= n;
        }
        Ok(acc)
    }

    /// Replaces the middle marker (used by rounding, which leaves the norm in
    /// the first core).
    pub(crate) fn with_middle(mut self, middle: usize) -> Self {
        self.middle = middle;
        self
    }
}

/// Decodes a row-major flat index into a multi-index.
pub fn unravel(mut flat: usize, sizes: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; sizes.len()];
    for k in (0..sizes.len()).rev() {
        idx[k] = flat % sizes[k];
        flat /= sizes[k];
    }
    idx
}
