//! N queens: one queen per row, the index is its column.
//!
//! The state packs three N-bit masks into a u64: occupied columns in bits
//! `0..N`, up-diagonals in `N..2N` and down-diagonals in `2N..3N`. Between
//! rows the up-diagonal mask shifts one column to the right and the
//! down-diagonal mask one to the left.

use crate::constructor::DerivativeSpec;
use crate::error::{Error, Result};
use crate::search::find_nonzero;
use crate::tt::{count_exact, TtTensor};
use num_bigint::BigInt;

pub const DEFAULT_QUEENS_CAP: usize = 12;

fn place(n: usize, i: usize, x: u64) -> Option<u64> {
    let mask = (1u64 << n) - 1;
    let cols = x & mask;
    let up = (x >> n) & mask;
    let dn = (x >> (2 * n)) & mask;
    let b = 1u64 << i;
    if (cols | up | dn) & b != 0 {
        return None;
    }
    let cols = cols | b;
    let up = ((up | b) << 1) & mask;
    let dn = (dn | b) >> 1;
    Some(cols | (up << n) | (dn << (2 * n)))
}

pub fn queens_spec(n: usize) -> Result<DerivativeSpec<'static, u64>> {
    if n == 0 || n > 21 {
        return Err(Error::InvalidArgument(format!("board size must be in 1..=21, got {n}")));
    }
    DerivativeSpec::new(vec![n; n], n - 1, move |_, i, x| place(n, i, *x), move |i, x, _| place(n, i, *x).map(|_| 1.0))
}

#[derive(Clone, Debug)]
pub struct QueensTensor {
    pub tensor: TtTensor,
    pub count: BigInt,
    pub ranks: Vec<usize>,
}

pub fn queens_tensor(n: usize) -> Result<QueensTensor> {
    queens_tensor_with_cap(n, DEFAULT_QUEENS_CAP)
}

pub fn queens_tensor_with_cap(n: usize, cap: usize) -> Result<QueensTensor> {
    if n > cap {
        return Err(Error::Budget(format!("board size {n} exceeds the cap of {cap}")));
    }
    let tensor = queens_spec(n)?.build()?;
    let count = count_exact(&tensor)?;
    let ranks = tensor.ranks().to_vec();
    Ok(QueensTensor { tensor, count, ranks })
}

/// Whether `cols[r]` (the column of the queen in row `r`) is a valid
/// placement.
pub fn is_valid_placement(cols: &[usize]) -> bool {
    let n = cols.len();
    cols.iter().all(|&c| c < n)
        && (0..n).all(|a| {
            (a + 1..n).all(|b| cols[a] != cols[b] && cols[a].abs_diff(cols[b]) != b - a)
        })
}

/// One placement, if any exists.
pub fn queens_placement(t: &TtTensor) -> Result<Option<Vec<usize>>> {
    Ok(find_nonzero(t)?.map(|r| r.indices))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_boards() {
        let counts: Vec<u32> = (1..=6).map(|n| u32::try_from(queens_tensor(n).unwrap().count).unwrap()).collect();
        assert_eq!(counts, vec![1, 0, 0, 2, 10, 4]);
    }

    #[test]
    fn placement_is_valid() {
        let q = queens_tensor(6).unwrap();
        let p = queens_placement(&q.tensor).unwrap().unwrap();
        assert!(is_valid_placement(&p));
        assert_eq!(queens_placement(&queens_tensor(3).unwrap().tensor).unwrap(), None);
    }

    #[test]
    fn validity_predicate() {
        assert!(is_valid_placement(&[1, 3, 0, 2]));
        assert!(!is_valid_placement(&[0, 2, 1, 3]));
    }

    #[test]
    fn cap() {
        assert!(queens_tensor_with_cap(9, 8).is_err());
    }
}
