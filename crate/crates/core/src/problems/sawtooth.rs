//! Indicator of index tuples whose mapped values alternate strictly up and
//! down.

use crate::constructor::DerivativeSpec;
use crate::error::{Error, Result};
use crate::tt::{count_exact, TtTensor};
use num_bigint::BigInt;
use std::sync::Arc;

/// Direction the next step has to take.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Next {
    /// Before the first value.
    #[default]
    Start,
    /// After the first value: either direction is fine.
    Any,
    Up,
    Down,
}

fn step(prev: &(i64, Next), c: i64) -> Option<(i64, Next)> {
    let (p, dir) = *prev;
    match dir {
        Next::Start => Some((c, Next::Any)),
        Next::Any if c > p => Some((c, Next::Down)),
        Next::Any if c < p => Some((c, Next::Up)),
        Next::Up if c > p => Some((c, Next::Down)),
        Next::Down if c < p => Some((c, Next::Up)),
        _ => None,
    }
}

pub fn sawtooth_spec(arrays: Vec<Vec<i64>>) -> Result<DerivativeSpec<'static, (i64, Next)>> {
    if arrays.len() < 2 || arrays.iter().any(Vec::is_empty) {
        return Err(Error::InvalidArgument("sawtooth needs at least two nonempty arrays".into()));
    }
    let d = arrays.len();
    let sizes = arrays.iter().map(Vec::len).collect();
    let a = Arc::new(arrays);
    let b = a.clone();
    DerivativeSpec::new(sizes, d - 1, move |k, i, x| step(x, a[k][i]), move |i, x, _| {
        step(x, b[d - 1][i]).map(|_| 1.0)
    })
}

pub fn sawtooth_build(arrays: &[Vec<i64>]) -> Result<TtTensor> {
    sawtooth_spec(arrays.to_vec())?.build()
}

pub fn sawtooth_count(arrays: &[Vec<i64>]) -> Result<BigInt> {
    count_exact(&sawtooth_build(arrays)?)
}
