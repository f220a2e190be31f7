//! Sequential against data-parallel execution of the loops that use `Exec`.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ctt::games::{payoffs, random_game, GameFamily, WeightFn};
use ctt::oracles::{brute_count, brute_payoffs, CountProblem, OracleBudget};
use ctt::problems::permanent::permanents;
use ctt::Exec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn game_payoffs(c: &mut Criterion) {
    let mut group = c.benchmark_group("payoffs");
    for family in [GameFamily::WeightedMajority, GameFamily::Airport] {
        let g = random_game(family, 16, WeightFn::Shapley, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, family.name()), &g, |b, g| b.iter(|| payoffs(black_box(g), exec)));
        }
    }
    group.finish();
}

fn oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracles");
    group.sample_size(10);
    let g = random_game(GameFamily::WeightedMajority, 14, WeightFn::Shapley, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
    let budget = OracleBudget::default();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "majority-14"), |b| b.iter(|| brute_payoffs(black_box(&g), &budget, exec)));
        group.bench_function(BenchmarkId::new(name, "subsets-20"), |b| {
            b.iter(|| brute_count(&CountProblem::Subsets { n: 20, m: 7 }, &budget, exec))
        });
    }
    group.finish();
}

fn permanent_batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("permanents");
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let batch: Vec<Vec<Vec<f64>>> =
        (0..64).map(|_| (0..10).map(|_| (0..10).map(|_| rng.random::<f64>()).collect()).collect()).collect();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "64x10"), |b| b.iter(|| permanents(black_box(&batch), exec)));
    }
    group.finish();
}

criterion_group!(benches, game_payoffs, oracles, permanent_batch);
criterion_main!(benches);
