//! Matrix permanent as a contraction of the "all indices distinct" indicator
//! with the rank-one tensor built from the matrix columns.

use crate::constructor::{BuildOptions, DerivativeSpec};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::tt::{convolve_rank_one, OpCount, TtTensor, WeightVectors};

pub const DEFAULT_PERMANENT_CAP: usize = 24;

/// Indicator of index tuples with pairwise distinct entries; the state is
/// the bitmask of indices already used.
pub fn permanent_spec(n: usize) -> Result<DerivativeSpec<'static, u64>> {
    if n == 0 || n > 63 {
        return Err(Error::InvalidArgument(format!("size must be in 1..=63, got {n}")));
    }
    DerivativeSpec::new(
        vec![n; n],
        n - 1,
        |_, i, x: &u64| (x & (1 << i) == 0).then(|| x | (1 << i)),
        |i, x, _| (x & (1 << i) == 0).then_some(1.0),
    )
}

pub fn permanent_indicator(n: usize) -> Result<TtTensor> {
    permanent_indicator_with_cap(n, DEFAULT_PERMANENT_CAP)
}

pub fn permanent_indicator_with_cap(n: usize, cap: usize) -> Result<TtTensor> {
    if n > cap {
        return Err(Error::Budget(format!("permanent size {n} exceeds the cap of {cap}")));
    }
    permanent_spec(n)?.build_with(&BuildOptions::default())
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct PermanentResult {
    pub value: f64,
    pub ranks: Vec<usize>,
    pub ops: OpCount,
}

fn check_square(a: &[Vec<f64>]) -> Result<usize> {
    let n = a.len();
    if n == 0 || a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("matrix must be square and nonempty".into()));
    }
    Ok(n)
}

/// Contracts a prebuilt indicator with the columns of `a`.
pub fn permanent_with(indicator: &TtTensor, a: &[Vec<f64>]) -> Result<PermanentResult> {
    let n = check_square(a)?;
    if indicator.dim() != n {
        return Err(Error::ShapeMismatch(format!("indicator of dimension {} for a {n}x{n} matrix", indicator.dim())));
    }
    let w = WeightVectors((0..n).map(|k| (0..n).map(|i| a[i][k]).collect()).collect());
    let (value, ops) = convolve_rank_one(indicator, &w)?;
    Ok(PermanentResult { value, ranks: indicator.ranks().to_vec(), ops })
}

pub fn permanent(a: &[Vec<f64>]) -> Result<PermanentResult> {
    let n = check_square(a)?;
    permanent_with(&permanent_indicator(n)?, a)
}

/// Permanents of many same-size matrices sharing one indicator.
pub fn permanents(matrices: &[Vec<Vec<f64>>], exec: Exec) -> Result<Vec<f64>> {
    let Some(first) = matrices.first() else { return Ok(Vec::new()) };
    let ind = permanent_indicator(check_square(first)?)?;
    exec.map(matrices.len(), |j| permanent_with(&ind, &matrices[j]).map(|r| r.value))
        .into_iter()
        .collect()
}

/// Ryser's formula with Gray-code ordered subsets and running row sums.
pub fn ryser_reference(a: &[Vec<f64>]) -> Result<f64> {
    let n = check_square(a)?;
    if n > DEFAULT_PERMANENT_CAP {
        return Err(Error::Budget(format!("size {n} exceeds {DEFAULT_PERMANENT_CAP}")));
    }
    let mut x: Vec<f64> = (0..n).map(|i| a[i][n - 1] - 0.5 * a[i].iter().sum::<f64>()).collect();
    let mut total: f64 = x.iter().product();
    let mut gray_prev = 0u64;
    for g in 1u64..(1u64 << (n - 1)) {
        let gray = g ^ (g >> 1);
        let j = (gray ^ gray_prev).trailing_zeros() as usize;
        let add = gray & (1 << j) != 0;
        for (i, xi) in x.iter_mut().enumerate() {
            if add {
                *xi += a[i][j];
            } else {
                *xi -= a[i][j];
            }
        }
        let prod: f64 = x.iter().product();
        if gray.count_ones() % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
        gray_prev = gray;
    }
    let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * 2.0 * total)
}
