//! Partition of a multiset into `n` parts of equal sum.
//!
//! Index `i_k` names the part that element `k` goes to. One indicator per
//! part tracks that part's running sum, pruned once it exceeds the target.

use crate::constructor::DerivativeSpec;
use crate::error::{Error, Result};
use crate::search::find_nonzero;
use crate::tt::{hadamard, reduce_exact, TtTensor};
use std::sync::Arc;

/// Indicator that part `j` sums to exactly `target`.
pub fn part_indicator(set: &[u64], parts: usize, j: usize, target: u64) -> Result<TtTensor> {
    let d = set.len();
    let s = Arc::new(set.to_vec());
    let s2 = s.clone();
    DerivativeSpec::<u64>::new(
        vec![parts; d],
        d - 1,
        move |k, i, x| {
            if i == j {
                let y = x + s[k];
                (y <= target).then_some(y)
            } else {
                Some(*x)
            }
        },
        move |i, x, _| {
            let y = if i == j { x + s2[d - 1] } else { *x };
            (y == target).then_some(1.0)
        },
    )?
    .build()
}

/// Product of all part indicators: 1 exactly at balanced assignments.
pub fn partition_tensor(set: &[u64], parts: usize) -> Result<Option<TtTensor>> {
    if parts == 0 {
        return Err(Error::InvalidArgument("number of parts must be positive".into()));
    }
    if set.is_empty() {
        return Err(Error::InvalidArgument("set must be nonempty".into()));
    }
    if set.contains(&0) {
        return Err(Error::InvalidArgument("set elements must be positive".into()));
    }
    let total: u64 = set.iter().sum();
    if total % parts as u64 != 0 {
        return Ok(None);
    }
    let target = total / parts as u64;
    let mut t = part_indicator(set, parts, 0, target)?;
    for j in 1..parts {
        t = reduce_exact(&hadamard(&t, &part_indicator(set, parts, j, target)?)?)?;
    }
    Ok(Some(t))
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct PartitionSolution {
    /// Part index of each element.
    pub assignment: Vec<usize>,
    pub ranks: Vec<usize>,
}

/// Whether every part of `assignment` sums to the same value.
pub fn is_balanced(set: &[u64], parts: usize, assignment: &[usize]) -> bool {
    if assignment.len() != set.len() || assignment.iter().any(|&p| p >= parts) {
        return false;
    }
    let mut sums = vec![0u64; parts];
    for (&s, &p) in set.iter().zip(assignment) {
        sums[p] += s;
    }
    sums.windows(2).all(|w| w[0] == w[1])
}

/// A balanced assignment, or `None` if none exists.
pub fn partition_solve(set: &[u64], parts: usize) -> Result<Option<PartitionSolution>> {
    if set.is_empty() && parts > 0 {
        return Ok(Some(PartitionSolution { assignment: vec![], ranks: vec![1] }));
    }
    let Some(t) = partition_tensor(set, parts)? else { return Ok(None) };
    let Some(r) = find_nonzero(&t)? else { return Ok(None) };
    if !is_balanced(set, parts, &r.indices) {
        return Err(Error::Precondition("returned assignment is not balanced".into()));
    }
    Ok(Some(PartitionSolution { assignment: r.indices, ranks: t.ranks().to_vec() }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_cases() {
        let s = partition_solve(&[1, 1], 2).unwrap().unwrap();
        assert!(is_balanced(&[1, 1], 2, &s.assignment));
        let s = partition_solve(&[1, 2, 3], 2).unwrap().unwrap();
        assert!(is_balanced(&[1, 2, 3], 2, &s.assignment));
        assert_eq!(partition_solve(&[1, 2], 2).unwrap(), None);
        assert_eq!(partition_solve(&[1, 5], 2).unwrap(), None);
    }

    #[test]
    fn indicator_marks_balanced_assignments() {
        let t = partition_tensor(&[1, 2, 3], 2).unwrap().unwrap();
        let full = t.full(8).unwrap();
        for (f, v) in full.iter().enumerate() {
            let a: Vec<usize> = (0..3).map(|k| f >> (2 - k) & 1).collect();
            assert_eq!(*v, is_balanced(&[1, 2, 3], 2, &a) as u8 as f64);
        }
    }

    #[test]
    fn three_parts() {
        let set = [1, 2, 3, 4, 5, 6];
        let s = partition_solve(&set, 3).unwrap().unwrap();
        assert!(is_balanced(&set, 3, &s.assignment));
    }
}
