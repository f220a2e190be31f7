//! Functions of a sum `P(a_1[i_1] + … + a_d[i_d])`.

use crate::constructor::DerivativeSpec;
use crate::error::{Error, Result};
use crate::tt::{Core, DenseCore, Matrix, TtTensor};
use ordered_float::OrderedFloat;
use std::sync::Arc;

type Real = OrderedFloat<f64>;

/// Middle position used for sums: the centre of the chain, which keeps both
/// state images small.
pub fn sum_middle(d: usize) -> usize {
    (d + 1) / 2 - 1
}

/// Derivative spec for `P(Σ a_k[i_k])`, middle at the centre.
pub fn linear_sum_spec(
    vectors: Vec<Vec<f64>>,
    p: impl Fn(f64) -> f64 + Send + Sync + 'static,
) -> Result<DerivativeSpec<'static, Real>> {
    if vectors.is_empty() || vectors.iter().any(Vec::is_empty) {
        return Err(Error::InvalidArgument("sum needs nonempty vectors".into()));
    }
    let d = vectors.len();
    let l = sum_middle(d);
    let sizes = vectors.iter().map(Vec::len).collect();
    let a = Arc::new(vectors);
    let b = a.clone();
    DerivativeSpec::new(
        sizes,
        l,
        move |k, i, x: &Real| Some(OrderedFloat(x.0 + a[k][i])),
        move |i, x, y| Some(p(x.0 + b[l][i] + y.0)),
    )
}

/// Tensor of `P(Σ a_k[i_k])`; with `p = None` (identity) the explicit rank-2
/// cores are emitted directly.
pub fn linear_sum_build(vectors: &[Vec<f64>], p: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>>) -> Result<TtTensor> {
    match p {
        Some(p) => linear_sum_spec(vectors.to_vec(), move |x| p(x))?.build(),
        None => linear_sum_rank2(vectors),
    }
}

/// `G_1 = (1, a_1[i])`, `G_k = [[1, a_k[i]], [0, 1]]`, `G_d = (a_d[i]; 1)`.
pub fn linear_sum_rank2(vectors: &[Vec<f64>]) -> Result<TtTensor> {
    if vectors.is_empty() || vectors.iter().any(Vec::is_empty) {
        return Err(Error::InvalidArgument("sum needs nonempty vectors".into()));
    }
    let d = vectors.len();
    if d == 1 {
        let a = &vectors[0];
        return TtTensor::new(vec![Core::Dense(DenseCore::from_fn([1, a.len(), 1], |_, i, _| a[i]))], 0);
    }
    let mut cores = Vec::with_capacity(d);
    for (k, a) in vectors.iter().enumerate() {
        let n = a.len();
        let core = if k == 0 {
            DenseCore::from_fn([1, n, 2], |_, i, y| if y == 0 { 1.0 } else { a[i] })
        } else if k == d - 1 {
            DenseCore::from_fn([2, n, 1], |x, i, _| if x == 0 { a[i] } else { 1.0 })
        } else {
            DenseCore::from_fn([2, n, 2], |x, i, y| match (x, y) {
                (0, 0) | (1, 1) => 1.0,
                (0, 1) => a[i],
                _ => 0.0,
            })
        };
        cores.push(Core::Dense(core));
    }
    TtTensor::new(cores, sum_middle(d))
}

/// Sum as a TT-Tucker tensor: a rank-2 indicator of "exactly one index is 1"
/// over binary inner modes, with factors `C_k = [[1, …, 1], [a_k[0], …]]`.
pub fn linear_sum_tucker(vectors: &[Vec<f64>]) -> Result<TtTensor> {
    if vectors.is_empty() || vectors.iter().any(Vec::is_empty) {
        return Err(Error::InvalidArgument("sum needs nonempty vectors".into()));
    }
    let d = vectors.len();
    let one = |i: usize, x: u8| if i == 0 { Some(x) } else { (x == 0).then_some(1) };
    let g = DerivativeSpec::<u8>::new(vec![2; d], d - 1, move |_, i, x| one(i, *x), move |i, x, _| {
        (one(i, *x)? == 1).then_some(1.0)
    })?
    .build()?;
    let factors = vectors
        .iter()
        .map(|a| {
            let mut data = vec![1.0; a.len()];
            data.extend_from_slice(a);
            Matrix::new(2, a.len(), data).map(Some)
        })
        .collect::<Result<Vec<_>>>()?;
    g.with_factors(factors)
}
