//! Direct recurrence for the one-seller market game.
//!
//! The tensor-train cores of this game are so regular that the contraction
//! collapses to an `O(|T|^2)` update of one vector. Slot `2c` holds the
//! weight of coalitions of size `c` (seller included, player `k` excluded)
//! with no buyer yet, slot `2c+1` the accumulated best price of those that
//! already have one.

use super::spec::{descending_order, GameKind, GameSpec};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Result of the recurrence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SellerRun {
    pub value: f64,
    /// Inner-loop updates plus final accumulation terms.
    pub steps: u64,
}

/// `π(k)` for buyers' `prices` sorted in descending order, seller at
/// player 0 and buyer `j` at player `j+1`. Only buyers strictly between
/// the first player and the last are supported (`1 ≤ k ≤ prices.len()-1`).
pub fn one_seller_iterative(prices: &[f64], k: usize, p: impl Fn(usize) -> f64) -> Result<SellerRun> {
    let n = prices.len() + 1;
    if k == 0 || k + 1 >= n {
        return Err(Error::Unsupported(format!(
            "the recurrence covers players 1..{} of {n}, not {k}",
            n.saturating_sub(2)
        )));
    }
    if prices.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Precondition("prices must be sorted in descending order".into()));
    }
    // 1-based player i+1 has price a(i+1); the seller is player 1.
    let a = |j: usize| prices[j - 2];
    let kk = k + 1;
    let mut v = vec![0.0; 2 * n];
    v[2] = 1.0;
    let mut steps = 0u64;
    for i in 1..=n - 2 {
        let ai = a(i + 1);
        if i + 1 == kk {
            for j in (0..=i).rev() {
                v[2 * j + 1] = ai * v[2 * j];
                v[2 * j] = -v[2 * j];
            }
        } else {
            for j in (0..=i).rev() {
                v[2 * j + 3] += ai * v[2 * j] + v[2 * j + 1];
            }
        }
        steps += i as u64 + 1;
    }
    let an = a(n);
    let mut s = 0.0;
    for i in 1..=n - 2 {
        s += v[2 * i] * p(i + 1) * an;
        s += v[2 * i + 1] * (p(i) + p(i + 1));
        steps += 1;
    }
    s += v[2 * n - 1] * p(n - 1);
    Ok(SellerRun { value: s, steps: steps + 1 })
}

/// Runs the recurrence for player `k` of a one-seller game given in its
/// own player order.
pub fn one_seller_iterative_for(g: &GameSpec, k: usize) -> Result<SellerRun> {
    let GameKind::OneSeller { prices } = &g.kind else {
        return Err(Error::InvalidArgument("not a one-seller game".into()));
    };
    g.validate()?;
    g.check_player(k)?;
    if k == 0 {
        return one_seller_iterative(prices, 0, |_| 0.0);
    }
    let order = descending_order(prices);
    let sorted: Vec<f64> = order.iter().map(|&j| prices[j]).collect();
    let pos = order.iter().position(|&j| j == k - 1).expect("order is a permutation") + 1;
    let table = g.weights.table(g.players());
    one_seller_iterative(&sorted, pos, |s| table[s])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::payoff::payoff;

    fn brute(prices: &[f64], k: usize, p: &[f64]) -> f64 {
        let n = prices.len() + 1;
        let nu = |mask: usize| {
            if mask & 1 == 0 {
                return 0.0;
            }
            (1..n).filter(|j| mask >> j & 1 == 1).map(|j| prices[j - 1]).fold(0.0, f64::max)
        };
        let mut total = 0.0;
        for mask in 0..1usize << n {
            if mask >> k & 1 == 1 {
                continue;
            }
            total += p[mask.count_ones() as usize] * (nu(mask | 1 << k) - nu(mask));
        }
        total
    }

    #[test]
    fn four_players() {
        let prices = [0.9, 0.5, 0.2];
        let g = GameSpec::new(GameKind::OneSeller { prices: prices.to_vec() }).unwrap();
        let p = g.weights.table(4);
        for k in 1..=2 {
            let r = one_seller_iterative(&prices, k, |s| p[s]).unwrap();
            let tensor = payoff(&g, k).unwrap();
            assert!((r.value - tensor).abs() < 1e-12, "k={k}: {} vs {tensor}", r.value);
            assert!((r.value - brute(&prices, k, &p)).abs() < 1e-12);
        }
        let c = [0.3; 3];
        let r = one_seller_iterative(&c, 1, |s| p[s]).unwrap();
        assert!((r.value - brute(&c, 1, &p)).abs() < 1e-12);
    }

    #[test]
    fn larger_games_match_brute_force() {
        let prices = [0.95, 0.81, 0.8, 0.55, 0.4, 0.4, 0.1];
        let p = crate::games::WeightFn::Shapley.table(8);
        for k in 1..7 {
            let r = one_seller_iterative(&prices, k, |s| p[s]).unwrap();
            assert!((r.value - brute(&prices, k, &p)).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn boundary_players_rejected() {
        let prices = [0.9, 0.5, 0.2];
        assert!(matches!(one_seller_iterative(&prices, 0, |_| 1.0), Err(Error::Unsupported(_))));
        assert!(matches!(one_seller_iterative(&prices, 3, |_| 1.0), Err(Error::Unsupported(_))));
        assert!(matches!(one_seller_iterative(&[0.1, 0.5, 0.2], 1, |_| 1.0), Err(Error::Precondition(_))));
    }

    #[test]
    fn unsorted_game_is_reordered() {
        let g = GameSpec::new(GameKind::OneSeller { prices: vec![0.2, 0.9, 0.5, 0.7] }).unwrap();
        for k in [2, 3, 4] {
            let r = one_seller_iterative_for(&g, k).unwrap();
            assert!((r.value - payoff(&g, k).unwrap()).abs() < 1e-12);
        }
        assert!(one_seller_iterative_for(&g, 1).is_err());
    }
}
