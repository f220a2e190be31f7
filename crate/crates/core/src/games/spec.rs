use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Coalition-size weight `p(s)` of a semivalue, for `s = |S|` with
/// `S ⊆ T \ {k}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightFn {
    /// `p(s) = s! (n-s-1)! / n!`.
    #[default]
    Shapley,
    /// `p(s) = 2^(1-n)`.
    Banzhaf,
}

impl WeightFn {
    /// Weight of a coalition of size `s` in a game with `n` players.
    pub fn weight(self, n: usize, s: usize) -> f64 {
        if n == 0 || s >= n {
            return 0.0;
        }
        match self {
            WeightFn::Shapley => {
                // 1 / (n · C(n-1, s)), accumulated as a product of ratios.
                let m = n - 1;
                let s = s.min(m - s);
                let mut c = 1.0f64;
                for j in 0..s {
                    c = c * (m - j) as f64 / (j + 1) as f64;
                }
                1.0 / (n as f64 * c)
            }
            WeightFn::Banzhaf => 0.5f64.powi(n as i32 - 1),
        }
    }

    /// The weights `p(0), …, p(n-1)`.
    pub fn table(self, n: usize) -> Vec<f64> {
        (0..n).map(|s| self.weight(n, s)).collect()
    }
}

/// Coalition value function and its parameters.
///
/// Players are numbered from 0 in the order given by the parameters. For the
/// one-seller game player 0 is the seller and player `j ≥ 1` offers
/// `prices[j-1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "kebab-case")]
pub enum GameKind {
    /// `2L+1` players: `0..L` sell left shoes, `L..=2L` sell right shoes;
    /// `ν(S)` is the number of complete pairs in `S`.
    Shoes { left: usize },
    /// `ν(S) = max_{i∈S} c_i`.
    Airport { costs: Vec<f64> },
    /// `ν(S) = 1` if `Σ_{i∈S} w_i ≥ M`, else 0.
    WeightedMajority { weights: Vec<u64>, threshold: u64 },
    /// `ν(S) = max(0, E − Σ_{i∉S} c_i)`.
    Bankruptcy { claims: Vec<f64>, estate: f64 },
    /// `ν(S) = max_{j∈S, j≠0} a_j` if the seller is in `S`, else 0.
    OneSeller { prices: Vec<f64> },
}

/// Game families, for generators and command-line selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GameFamily {
    Shoes,
    Airport,
    WeightedMajority,
    Bankruptcy,
    OneSeller,
}

impl GameFamily {
    pub const ALL: [GameFamily; 5] = [
        GameFamily::Shoes,
        GameFamily::Airport,
        GameFamily::WeightedMajority,
        GameFamily::Bankruptcy,
        GameFamily::OneSeller,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GameFamily::Shoes => "shoes",
            GameFamily::Airport => "airport",
            GameFamily::WeightedMajority => "weighted-majority",
            GameFamily::Bankruptcy => "bankruptcy",
            GameFamily::OneSeller => "one-seller",
        }
    }
}

/// A cooperative game with its semivalue weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameSpec {
    #[serde(flatten)]
    pub kind: GameKind,
    #[serde(default)]
    pub weights: WeightFn,
}

impl GameSpec {
    /// Validated game with Shapley weights.
    pub fn new(kind: GameKind) -> Result<Self> {
        Self::with_weights(kind, WeightFn::Shapley)
    }

    pub fn with_weights(kind: GameKind, weights: WeightFn) -> Result<Self> {
        let g = GameSpec { kind, weights };
        g.validate()?;
        Ok(g)
    }

    pub fn family(&self) -> GameFamily {
        match self.kind {
            GameKind::Shoes { .. } => GameFamily::Shoes,
            GameKind::Airport { .. } => GameFamily::Airport,
            GameKind::WeightedMajority { .. } => GameFamily::WeightedMajority,
            GameKind::Bankruptcy { .. } => GameFamily::Bankruptcy,
            GameKind::OneSeller { .. } => GameFamily::OneSeller,
        }
    }

    /// Number of players `|T|`.
    pub fn players(&self) -> usize {
        match &self.kind {
            GameKind::Shoes { left } => 2 * left + 1,
            GameKind::Airport { costs } => costs.len(),
            GameKind::WeightedMajority { weights, .. } => weights.len(),
            GameKind::Bankruptcy { claims, .. } => claims.len(),
            GameKind::OneSeller { prices } => prices.len() + 1,
        }
    }

    /// `p(s)` for this game.
    pub fn weight(&self, s: usize) -> f64 {
        self.weights.weight(self.players(), s)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        let nonneg = |v: &[f64], what: &str| -> Result<()> {
            match v.iter().find(|x| !x.is_finite() || **x < 0.0) {
                Some(x) => Err(Error::InvalidArgument(format!("{what} must be finite and nonnegative, got {x}"))),
                None => Ok(()),
            }
        };
        match &self.kind {
            GameKind::Shoes { .. } => {}
            GameKind::Airport { costs } => {
                if costs.is_empty() {
                    return bad("airport game needs at least one player".into());
                }
                nonneg(costs, "landing costs")?;
            }
            GameKind::WeightedMajority { weights, .. } => {
                if weights.is_empty() {
                    return bad("majority game needs at least one player".into());
                }
                if weights.contains(&0) {
                    return bad("majority weights must be at least 1".into());
                }
                if weights.iter().try_fold(0u64, |a, &w| a.checked_add(w)).is_none() {
                    return bad("majority weights overflow".into());
                }
            }
            GameKind::Bankruptcy { claims, estate } => {
                if claims.is_empty() {
                    return bad("bankruptcy game needs at least one player".into());
                }
                nonneg(claims, "claims")?;
                let total: f64 = claims.iter().sum();
                if !estate.is_finite() || *estate < 0.0 || *estate > total {
                    return bad(format!("estate {estate} outside [0, {total}]"));
                }
            }
            GameKind::OneSeller { prices } => nonneg(prices, "prices")?,
        }
        Ok(())
    }

    pub(crate) fn check_player(&self, k: usize) -> Result<()> {
        let n = self.players();
        if k >= n {
            return Err(Error::InvalidArgument(format!("player {k} outside 0..{n}")));
        }
        Ok(())
    }
}

/// Indices of `v` sorted by value, descending; ties keep their order.
pub(crate) fn descending_order(v: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[b].total_cmp(&v[a]));
    idx
}
