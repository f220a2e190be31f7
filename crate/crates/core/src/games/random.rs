//! Random instances following the benchmark recipes: majority weights and
//! bankruptcy claims are i.i.d. integers in `[1, 10]` with
//! `M = ⌊Σw/2⌋ + 1` and `E = Σc/2`; airport costs and one-seller prices are
//! uniform on `[0, 1]`.

use super::spec::{GameFamily, GameKind, GameSpec, WeightFn};
use crate::error::{Error, Result};
use rand::Rng;

/// A random game of `family` with `players` players.
///
/// Shoes games need an odd player count.
pub fn random_game<R: Rng>(family: GameFamily, players: usize, weights: WeightFn, rng: &mut R) -> Result<GameSpec> {
    if players == 0 {
        return Err(Error::InvalidArgument("a game needs at least one player".into()));
    }
    let kind = match family {
        GameFamily::Shoes => {
            if players % 2 == 0 {
                return Err(Error::InvalidArgument(format!("shoes games have 2L+1 players, got {players}")));
            }
            GameKind::Shoes { left: players / 2 }
        }
        GameFamily::Airport => GameKind::Airport { costs: (0..players).map(|_| rng.random::<f64>()).collect() },
        GameFamily::WeightedMajority => {
            let weights: Vec<u64> = (0..players).map(|_| rng.random_range(1..=10)).collect();
            let threshold = weights.iter().sum::<u64>() / 2 + 1;
            GameKind::WeightedMajority { weights, threshold }
        }
        GameFamily::Bankruptcy => {
            let claims: Vec<f64> = (0..players).map(|_| rng.random_range(1..=10u32) as f64).collect();
            let estate = claims.iter().sum::<f64>() / 2.0;
            GameKind::Bankruptcy { claims, estate }
        }
        GameFamily::OneSeller => {
            GameKind::OneSeller { prices: (1..players).map(|_| rng.random::<f64>()).collect() }
        }
    };
    GameSpec::with_weights(kind, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn recipes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for family in GameFamily::ALL {
            let g = random_game(family, 7, WeightFn::Shapley, &mut rng).unwrap();
            assert_eq!(g.players(), 7);
            assert_eq!(g.family(), family);
        }
        assert!(random_game(GameFamily::Shoes, 4, WeightFn::Shapley, &mut rng).is_err());
        let g = random_game(GameFamily::WeightedMajority, 9, WeightFn::Shapley, &mut rng).unwrap();
        let GameKind::WeightedMajority { weights, threshold } = g.kind else { unreachable!() };
        assert!(weights.iter().all(|w| (1..=10).contains(w)));
        assert_eq!(threshold, weights.iter().sum::<u64>() / 2 + 1);
    }
}
