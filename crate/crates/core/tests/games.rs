mod common;

use common::rel_close;
use ctt::games::{
    one_seller_iterative_for, payoff, payoffs, random_game, GameFamily, GameKind, GameSpec, WeightFn,
};
use ctt::oracles::{brute_payoff, coalition_value, OracleBudget};
use ctt::Exec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scale(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |a, x| a.max(x.abs()))
}

fn check_against_oracle(g: &GameSpec) {
    let pv = payoffs(g, Exec::Parallel).unwrap().values;
    let s = scale(&pv).max(f64::MIN_POSITIVE);
    for (k, &v) in pv.iter().enumerate() {
        let b = brute_payoff(g, k, &OracleBudget::default(), Exec::Sequential).unwrap();
        assert!(rel_close(v, b, 1e-12, s), "{g:?} player {k}: {v} vs {b}");
    }
}

#[test]
fn random_games_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for family in GameFamily::ALL {
        for n in 1..=11usize {
            if family == GameFamily::Shoes && n % 2 == 0 {
                continue;
            }
            for weights in [WeightFn::Shapley, WeightFn::Banzhaf] {
                let g = random_game(family, n, weights, &mut rng).unwrap();
                check_against_oracle(&g);
            }
        }
    }
}

#[test]
fn shapley_efficiency() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for family in GameFamily::ALL {
        for n in [1usize, 3, 7, 13] {
            let g = random_game(family, n, WeightFn::Shapley, &mut rng).unwrap();
            let total: f64 = payoffs(&g, Exec::Parallel).unwrap().values.iter().sum();
            let grand = coalition_value(&g, (1u64 << n) - 1);
            assert!((total - grand).abs() <= 1e-10, "{family:?} n={n}: {total} vs {grand}");
        }
    }
}

#[test]
fn airport_scaling_keeps_argmax() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..5 {
        let g = random_game(GameFamily::Airport, 9, WeightFn::Shapley, &mut rng).unwrap();
        let GameKind::Airport { costs } = &g.kind else { unreachable!() };
        let scaled = GameSpec::new(GameKind::Airport { costs: costs.iter().map(|c| c * 3.5).collect() }).unwrap();
        let a = payoffs(&g, Exec::Sequential).unwrap().values;
        let b = payoffs(&scaled, Exec::Sequential).unwrap().values;
        for (x, y) in a.iter().zip(&b) {
            assert!(rel_close(3.5 * x, *y, 1e-12, 1e-12));
        }
        let argmax = |v: &[f64]| (0..v.len()).max_by(|&i, &j| v[i].total_cmp(&v[j])).unwrap();
        assert_eq!(argmax(&a), argmax(&b));
    }
}

#[test]
fn airport_equal_costs_split_evenly() {
    let g = GameSpec::new(GameKind::Airport { costs: vec![2.0; 5] }).unwrap();
    for v in payoffs(&g, Exec::Sequential).unwrap().values {
        assert!(rel_close(v, 0.4, 1e-14, 1.0));
    }
}

#[test]
fn majority_threshold_out_of_reach() {
    let g = GameSpec::new(GameKind::WeightedMajority { weights: vec![2, 3, 4], threshold: 10 }).unwrap();
    assert!(payoffs(&g, Exec::Sequential).unwrap().values.iter().all(|&v| v == 0.0));
}

#[test]
fn bankruptcy_small_instance() {
    let g = GameSpec::new(GameKind::Bankruptcy { claims: vec![2.0, 4.0, 6.0], estate: 6.0 }).unwrap();
    check_against_oracle(&g);
    let v = payoffs(&g, Exec::Sequential).unwrap().values;
    for (x, want) in v.iter().zip([1.0, 2.0, 3.0]) {
        assert!(rel_close(*x, want, 1e-12, 1.0), "{v:?}");
    }
}

#[test]
fn one_seller_recurrence_matches_tensor_path() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in 3..=12 {
        let g = random_game(GameFamily::OneSeller, n, WeightFn::Shapley, &mut rng).unwrap();
        let GameKind::OneSeller { prices } = &g.kind else { unreachable!() };
        let last = (0..prices.len()).min_by(|&i, &j| prices[i].total_cmp(&prices[j]).then(j.cmp(&i))).unwrap() + 1;
        for k in 1..n {
            let r = one_seller_iterative_for(&g, k);
            if k == last {
                assert!(r.is_err());
                continue;
            }
            let tensor = payoff(&g, k).unwrap();
            assert!(rel_close(r.unwrap().value, tensor, 1e-12, 1e-3), "n={n} k={k}");
        }
    }
}
