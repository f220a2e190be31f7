use super::spec::GameSpec;
use super::tensors::{build_game_tensors, GameTensors};
use crate::error::Result;
use crate::exec::Exec;
use crate::tt::{contract_product, convolve_rank_one, OpCount, WeightVectors};
use serde::{Deserialize, Serialize};

/// One player's payoff with construction diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PayoffDetail {
    pub value: f64,
    /// TT-ranks of each tensor built for this player.
    pub ranks: Vec<Vec<usize>>,
    /// Operations of the sparse ones-contractions, where they were counted.
    pub ops: Option<OpCount>,
}

/// Payoffs `π(0), …, π(n-1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PayoffVector {
    pub values: Vec<f64>,
    pub max_rank: usize,
    pub ops: u64,
}

fn ones_contraction(t: &crate::tt::TtTensor, ops: &mut OpCount) -> Result<f64> {
    let (v, c) = convolve_rank_one(t, &WeightVectors::ones(&t.mode_sizes()))?;
    ops.additions += c.additions;
    ops.multiplications += c.multiplications;
    Ok(v)
}

/// Payoff of player `k` with ranks and operation counts.
pub fn payoff_detail(g: &GameSpec, k: usize) -> Result<PayoffDetail> {
    let tensors = build_game_tensors(g, k)?;
    let ranks = tensors.ranks();
    let mut ops = OpCount::default();
    let (value, counted) = match &tensors {
        GameTensors::Difference { with_player, without_player } => {
            let a = ones_contraction(with_player, &mut ops)?;
            let b = ones_contraction(without_player, &mut ops)?;
            (a - b, true)
        }
        GameTensors::Single(t) => (ones_contraction(t, &mut ops)?, true),
        GameTensors::Product { weights, values, .. } => {
            (contract_product(weights, values, &WeightVectors::ones(&weights.mode_sizes()))?, false)
        }
        GameTensors::Scalar(v) => (*v, true),
    };
    Ok(PayoffDetail { value, ranks, ops: counted.then_some(ops) })
}

/// Payoff `π(k)` of player `k` (0-based).
pub fn payoff(g: &GameSpec, k: usize) -> Result<f64> {
    Ok(payoff_detail(g, k)?.value)
}

/// Payoffs of all players; players are processed independently.
pub fn payoffs(g: &GameSpec, exec: Exec) -> Result<PayoffVector> {
    g.validate()?;
    let details = exec.map(g.players(), |k| payoff_detail(g, k)).into_iter().collect::<Result<Vec<_>>>()?;
    Ok(PayoffVector {
        values: details.iter().map(|d| d.value).collect(),
        max_rank: details.iter().flat_map(|d| d.ranks.iter().flatten()).copied().max().unwrap_or(1),
        ops: details.iter().filter_map(|d| d.ops).map(|o| o.total()).sum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::spec::{GameKind, WeightFn};

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn shoes_one_pair() {
        let g = GameSpec::new(GameKind::Shoes { left: 1 }).unwrap();
        let v = payoffs(&g, Exec::Sequential).unwrap().values;
        assert!(close(v[0], 2.0 / 3.0), "{v:?}");
        assert!(close(v[1], 1.0 / 6.0));
        assert!(close(v[2], 1.0 / 6.0));
    }

    #[test]
    fn symmetric_majority() {
        let g = GameSpec::new(GameKind::WeightedMajority { weights: vec![1, 1, 1], threshold: 2 }).unwrap();
        for k in 0..3 {
            assert!(close(payoff(&g, k).unwrap(), 1.0 / 3.0));
        }
    }

    #[test]
    fn airport_two_players() {
        // Shapley: the cheaper plane pays half its cost, the other the rest.
        let g = GameSpec::new(GameKind::Airport { costs: vec![1.0, 3.0] }).unwrap();
        let v = payoffs(&g, Exec::Sequential).unwrap().values;
        assert!(close(v[0], 0.5) && close(v[1], 2.5), "{v:?}");
    }

    #[test]
    fn one_seller_two_buyers() {
        let g = GameSpec::new(GameKind::OneSeller { prices: vec![0.5, 1.0] }).unwrap();
        let v = payoffs(&g, Exec::Sequential).unwrap().values;
        let total: f64 = v.iter().sum();
        assert!(close(total, 1.0), "{v:?}");
        // Seller: p(1)(1+.5) + p(2)·1 with p = (1/3, 1/6, 1/3).
        assert!(close(v[0], 1.5 / 6.0 + 1.0 / 3.0));
    }

    #[test]
    fn bankruptcy_efficiency() {
        let g = GameSpec::new(GameKind::Bankruptcy { claims: vec![2.0, 4.0, 6.0], estate: 6.0 }).unwrap();
        let v = payoffs(&g, Exec::Sequential).unwrap().values;
        assert!(close(v.iter().sum::<f64>(), 6.0), "{v:?}");
    }

    #[test]
    fn single_player_games() {
        let g = GameSpec::new(GameKind::Airport { costs: vec![0.4] }).unwrap();
        assert!(close(payoff(&g, 0).unwrap(), 0.4));
        let g = GameSpec::with_weights(GameKind::Bankruptcy { claims: vec![3.0], estate: 2.0 }, WeightFn::Banzhaf)
            .unwrap();
        assert!(close(payoff(&g, 0).unwrap(), 2.0));
        let g = GameSpec::new(GameKind::OneSeller { prices: vec![] }).unwrap();
        assert_eq!(payoff(&g, 0).unwrap(), 0.0);
    }
}
