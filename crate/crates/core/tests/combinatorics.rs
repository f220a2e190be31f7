mod common;

use common::{random_matrix, rel_close};
use ctt::oracles::{brute_count, brute_knapsack, brute_permanent, knapsack_dp, CountProblem, OracleBudget};
use ctt::problems::knapsack::{knapsack_solve, KnapsackProblem};
use ctt::problems::partition::{is_balanced, partition_solve, partition_tensor};
use ctt::problems::permanent::{permanent, permanents, ryser_reference};
use ctt::problems::qtt::{qtt_step_build, to_bits};
use ctt::problems::queens::{is_valid_placement, queens_placement, queens_tensor};
use ctt::problems::sat::{sat_count, sat_model, CnfFormula};
use ctt::problems::sawtooth::sawtooth_count;
use ctt::problems::subsets::subsets_divisible_count;
use ctt::tt::{count_exact, eval_entry};
use ctt::Exec;
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn budget() -> OracleBudget {
    OracleBudget::default()
}

fn signed(u: BigUint) -> BigInt {
    BigInt::from(u)
}

#[test]
fn queens_counts_and_placements() {
    for n in 1..=9 {
        let q = queens_tensor(n).unwrap();
        let want = brute_count(&CountProblem::Queens(n), &budget(), Exec::Parallel).unwrap();
        assert_eq!(q.count, signed(want.clone()), "n={n}");
        match queens_placement(&q.tensor).unwrap() {
            Some(p) => assert!(is_valid_placement(&p), "n={n}: {p:?}"),
            None => assert_eq!(want, BigUint::from(0u8)),
        }
    }
}

#[test]
fn sat_counts_and_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let n = rng.random_range(3..=12);
        let m = rng.random_range(1..=5 * n);
        let f = CnfFormula::random_3cnf(n, m, &mut rng).unwrap();
        let want = brute_count(&CountProblem::Sat(&f), &budget(), Exec::Parallel).unwrap();
        assert_eq!(sat_count(&f).unwrap(), signed(want.clone()));
        match sat_model(&f).unwrap() {
            Some(model) => assert!(f.is_satisfied_by(&model)),
            None => assert_eq!(want, BigUint::from(0u8)),
        }
    }
    let unsat = CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap();
    assert_eq!(sat_count(&unsat).unwrap(), BigInt::from(0));
    assert_eq!(sat_model(&unsat).unwrap(), None);
}

#[test]
fn subsets_match_enumeration() {
    for n in 1..=16 {
        for m in [2u64, 3, 5, 7] {
            let c = subsets_divisible_count(n, m).unwrap();
            let want = brute_count(&CountProblem::Subsets { n, m }, &budget(), Exec::Parallel).unwrap();
            assert_eq!(c.count, want, "n={n} m={m}");
        }
    }
}

#[test]
fn sawtooth_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..20 {
        let d = rng.random_range(2..=6);
        let arrays: Vec<Vec<i64>> =
            (0..d).map(|_| (0..rng.random_range(1..=4)).map(|_| rng.random_range(-3..=3)).collect()).collect();
        let want = brute_count(&CountProblem::Sawtooth(&arrays), &budget(), Exec::Sequential).unwrap();
        assert_eq!(sawtooth_count(&arrays).unwrap(), signed(want), "{arrays:?}");
    }
}

#[test]
fn partition_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..20 {
        let n = rng.random_range(2..=9);
        let parts = rng.random_range(2..=3);
        let set: Vec<u64> = (0..n).map(|_| rng.random_range(1..=6)).collect();
        let want = brute_count(&CountProblem::Partition { set: &set, parts }, &budget(), Exec::Sequential).unwrap();
        let count = match partition_tensor(&set, parts).unwrap() {
            Some(t) => count_exact(&t).unwrap(),
            None => BigInt::from(0),
        };
        assert_eq!(count, signed(want.clone()), "{set:?} into {parts}");
        match partition_solve(&set, parts).unwrap() {
            Some(s) => assert!(is_balanced(&set, parts, &s.assignment)),
            None => assert_eq!(want, BigUint::from(0u8)),
        }
    }
}

#[test]
fn knapsack_solutions_are_feasible() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..20 {
        let n = rng.random_range(3..=10);
        let p = KnapsackProblem::random_zero_one(n, 10, &mut rng);
        let best = knapsack_dp(&p).unwrap();
        let (brute, _) = brute_knapsack(&p, &budget(), Exec::Sequential).unwrap();
        assert_eq!(best, brute);
        let s = knapsack_solve(&p).unwrap().expect("the empty selection is feasible");
        assert!(p.is_feasible(&s.counts));
        assert!(s.value <= best);
    }
    let bounded = KnapsackProblem {
        values: vec![5.0, 4.0, 3.0],
        weights: vec![vec![4.0, 3.0, 2.0], vec![1.0, 2.0, 2.0]],
        capacities: vec![10.0, 6.0],
        bounds: Some(vec![2, 2, 3]),
        round_eps: None,
    };
    let s = knapsack_solve(&bounded).unwrap().unwrap();
    assert!(bounded.is_feasible(&s.counts));
}

#[test]
fn permanents_match_references() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for n in 1..=8 {
        let a = random_matrix(n, &mut rng);
        let t = permanent(&a).unwrap().value;
        let r = ryser_reference(&a).unwrap();
        let b = brute_permanent(&a, &budget()).unwrap();
        assert!(rel_close(t, r, 1e-9, 1e-12), "n={n}: {t} vs {r}");
        assert!(rel_close(t, b, 1e-9, 1e-12), "n={n}: {t} vs {b}");
    }
    let batch: Vec<Vec<Vec<f64>>> = (0..6).map(|_| random_matrix(6, &mut rng)).collect();
    let seq = permanents(&batch, Exec::Sequential).unwrap();
    let par = permanents(&batch, Exec::Parallel).unwrap();
    assert_eq!(seq, par);
}

#[test]
fn qtt_step_entries() {
    let t = qtt_step_build(4, 5).unwrap();
    assert_eq!(eval_entry(&t, &to_bits(6, 4)).unwrap(), 1.0);
    assert_eq!(eval_entry(&t, &to_bits(5, 4)).unwrap(), 0.0);
}
