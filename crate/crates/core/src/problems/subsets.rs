//! Subsets of `{1, …, n}` whose element sum is divisible by `m` (the empty
//! set included).

use crate::constructor::DerivativeSpec;
use crate::error::{Error, Result};
use crate::tt::{count_exact, TtTensor};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

pub fn subsets_divisible_spec(n: usize, m: u64) -> Result<DerivativeSpec<'static, u64>> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("modulus must be at least 2, got {m}")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("set size must be positive".into()));
    }
    DerivativeSpec::new(
        vec![2; n],
        n - 1,
        move |k, i, x| Some((x + i as u64 * (k as u64 + 1)) % m),
        move |i, x, _| Some(((x + i as u64 * n as u64) % m == 0) as u8 as f64),
    )
}

pub fn subsets_divisible_tensor(n: usize, m: u64) -> Result<TtTensor> {
    subsets_divisible_spec(n, m)?.build()
}

/// Closed form for `m | n`: summing the cores over their slices gives the
/// circulant `I + P^k` (with `P` the cyclic shift), every `m` consecutive
/// factors form the same block `B = Π_r (I + P^r)`, and the count is the
/// `(0, 0)` entry of `B^{n/m}`. `B` is diagonalized by the discrete Fourier
/// basis with eigenvalues `Π_r (1 + ω^{jr})`, which equal `2^g` when
/// `g = gcd(j, m)` and `m/g` is odd and `0` otherwise.
pub fn subsets_divisible_analytic(n: usize, m: u64) -> Option<BigUint> {
    if m < 2 || n == 0 || n as u64 % m != 0 {
        return None;
    }
    let q = (n as u64 / m) as u32;
    let mut total = BigUint::zero();
    for j in 0..m {
        let g = j.gcd(&m);
        if (m / g) % 2 == 1 {
            total += BigUint::one() << (g as usize * q as usize);
        }
    }
    let (quot, rem) = total.div_rem(&BigUint::from(m));
    rem.is_zero().then_some(quot)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetsCount {
    pub count: BigUint,
    /// Value from the closed form, when it applies.
    pub analytic: Option<BigUint>,
}

/// Exact count by contraction, cross-checked against the closed form when
/// `m | n`.
pub fn subsets_divisible_count(n: usize, m: u64) -> Result<SubsetsCount> {
    let c: BigInt = count_exact(&subsets_divisible_tensor(n, m)?)?;
    let count = c.to_biguint().ok_or_else(|| Error::Precondition("negative subset count".into()))?;
    let analytic = subsets_divisible_analytic(n, m);
    if let Some(a) = &analytic {
        if *a != count {
            return Err(Error::Precondition(format!("contraction gives {count} but the closed form gives {a}")));
        }
    }
    Ok(SubsetsCount { count, analytic })
}
