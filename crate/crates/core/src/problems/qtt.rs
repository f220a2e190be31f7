//! Step function `P(x) = [x > t]` on `0..2^d` with binary indices, most
//! significant bit first.
//!
//! State 0 means "equal to `t` so far", state 1 means "already greater".

use crate::constructor::DerivativeSpec;
use crate::error::{Error, Result};
use crate::tt::{DenseCore, TtTensor};

fn step(bit: u64, i: usize, x: u8) -> Option<u8> {
    match (bit, i) {
        (0, 0) => Some(x),
        (0, _) => Some(1),
        (_, 0) => (x == 1).then_some(1),
        _ => Some(x),
    }
}

fn check(d: usize, t: u64) -> Result<()> {
    if d == 0 || d > 63 {
        return Err(Error::InvalidArgument(format!("bit count must be in 1..=63, got {d}")));
    }
    if t >= 1u64 << d {
        return Err(Error::InvalidArgument(format!("threshold {t} does not fit in {d} bits")));
    }
    Ok(())
}

pub fn qtt_step_spec(d: usize, t: u64) -> Result<DerivativeSpec<'static, u8>> {
    check(d, t)?;
    let bit = move |k: usize| (t >> (d - 1 - k)) & 1;
    DerivativeSpec::new(
        vec![2; d],
        d - 1,
        move |k, i, x| step(bit(k), i, *x),
        move |i, x, _| step(bit(d - 1), i, *x).map(f64::from),
    )
}

/// Tensor with entry 1 at the binary index of every `x > t`, else 0.
pub fn qtt_step_build(d: usize, t: u64) -> Result<TtTensor> {
    qtt_step_spec(d, t)?.build()
}

/// Binary index of `x`, most significant bit first.
pub fn to_bits(x: u64, d: usize) -> Vec<usize> {
    (0..d).map(|k| ((x >> (d - 1 - k)) & 1) as usize).collect()
}

/// The 2×2×2 core a bit `b` induces on the full state set `{0, 1}`. Built
/// cores are sub-blocks of it restricted to reachable states.
pub fn step_core_template(b: u64) -> DenseCore {
    DenseCore::from_fn([2, 2, 2], |x, i, y| (step(b, i, x as u8) == Some(y as u8)) as u8 as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tt::eval_entry;

    #[test]
    fn small_thresholds() {
        let t = qtt_step_build(4, 5).unwrap();
        assert_eq!(eval_entry(&t, &to_bits(6, 4)).unwrap(), 1.0);
        assert_eq!(eval_entry(&t, &to_bits(5, 4)).unwrap(), 0.0);
        assert!(t.max_rank() <= 2);
    }

    #[test]
    fn top_threshold_is_zero() {
        let t = qtt_step_build(3, 7).unwrap();
        assert!(t.full(8).unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn template_cores() {
        let z = step_core_template(0);
        let one = step_core_template(1);
        let slice = |c: &DenseCore, i| [[c.get(0, i, 0), c.get(0, i, 1)], [c.get(1, i, 0), c.get(1, i, 1)]];
        assert_eq!(slice(&z, 0), [[1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(slice(&z, 1), [[0.0, 1.0], [0.0, 1.0]]);
        assert_eq!(slice(&one, 0), [[0.0, 0.0], [0.0, 1.0]]);
        assert_eq!(slice(&one, 1), [[1.0, 0.0], [0.0, 1.0]]);
    }

    #[test]
    fn out_of_range() {
        assert!(qtt_step_build(2, 4).is_err());
        assert!(qtt_step_build(0, 0).is_err());
    }
}
