#![allow(dead_code)]

use ctt::games::{build_game_tensors, GameKind, GameSpec, GameTensors};
use ctt::problems::knapsack::KnapsackProblem;
use ctt::problems::partition::part_indicator;
use ctt::problems::permanent::permanent_indicator;
use ctt::problems::qtt::qtt_step_build;
use ctt::problems::queens::queens_spec;
use ctt::problems::sat::clause_tensor;
use ctt::problems::sawtooth::sawtooth_build;
use ctt::problems::subsets::subsets_divisible_tensor;
use ctt::problems::sum::linear_sum_build;
use ctt::{Core, TtTensor};
use std::sync::Arc;

/// Constructor-built tensors from every problem family, all small enough
/// to expand densely.
pub fn catalog() -> Vec<(String, TtTensor)> {
    let mut out: Vec<(String, TtTensor)> = vec![
        ("queens-6".into(), queens_spec(6).unwrap().build().unwrap()),
        ("permanent-5".into(), permanent_indicator(5).unwrap()),
        ("qtt-step-8-100".into(), qtt_step_build(8, 100).unwrap()),
        ("qtt-step-10-0".into(), qtt_step_build(10, 0).unwrap()),
        ("subsets-10-3".into(), subsets_divisible_tensor(10, 3).unwrap()),
        ("sawtooth".into(), sawtooth_build(&[vec![1, 3, 2], vec![2, 2, 5], vec![0, 4], vec![3, 1, 4], vec![2, 6]]).unwrap()),
        ("partition-part-1".into(), part_indicator(&[1, 2, 3, 4, 5, 3], 3, 1, 6).unwrap()),
        ("sat-clause".into(), clause_tensor(8, &[2, -5, 7]).unwrap()),
        ("sat-clause-single".into(), clause_tensor(5, &[-1]).unwrap()),
    ];
    let sq: Arc<dyn Fn(f64) -> f64 + Send + Sync> = Arc::new(|x| x * x - 1.0);
    out.push((
        "sum-squared".into(),
        linear_sum_build(&[vec![0.0, 1.5], vec![0.0, 2.0, 3.0], vec![1.0, 0.25], vec![0.0, 1.0, 2.0, 4.0]], Some(sq))
            .unwrap(),
    ));
    let kp = KnapsackProblem {
        values: vec![3.0, 4.0, 5.0, 6.0],
        weights: vec![vec![2.0, 3.0, 4.5, 5.0]],
        capacities: vec![9.5],
        bounds: Some(vec![2, 2, 1, 3]),
        round_eps: None,
    };
    out.push(("knapsack-constraint".into(), kp.constraint_indicator(0).unwrap()));
    let games = [
        GameKind::Shoes { left: 2 },
        GameKind::Airport { costs: vec![0.3, 0.9, 0.1, 0.5, 0.5] },
        GameKind::WeightedMajority { weights: vec![3, 1, 4, 1, 5, 9], threshold: 12 },
        GameKind::Bankruptcy { claims: vec![2.0, 7.0, 1.0, 8.0, 2.0], estate: 10.0 },
        GameKind::OneSeller { prices: vec![0.4, 0.8, 0.2, 0.6] },
    ];
    for kind in games {
        let g = GameSpec::new(kind).unwrap();
        let name = g.family().name();
        for k in [0, 2] {
            let tag = |s: &str| format!("{name}-k{k}-{s}");
            match build_game_tensors(&g, k).unwrap() {
                GameTensors::Difference { with_player, without_player } => {
                    out.push((tag("with"), with_player));
                    out.push((tag("without"), without_player));
                }
                GameTensors::Product { weights, values, .. } => {
                    out.push((tag("weights"), weights));
                    out.push((tag("values"), values));
                }
                GameTensors::Single(t) => out.push((tag("single"), t)),
                GameTensors::Scalar(_) => {}
            }
        }
    }
    out
}

/// Dense entries (last index fastest) by explicit multiplication of the
/// core slices, applying factor matrices by hand.
pub fn dense_reconstruct(t: &TtTensor) -> Vec<f64> {
    let sizes = t.mode_sizes();
    let mut rows = vec![vec![1.0]];
    for k in 0..t.dim() {
        let core = match t.core(k) {
            Core::Sparse(s) => s.to_dense(),
            Core::Dense(d) => d.clone(),
        };
        let [r, inner, c] = core.shape();
        let slice = |e: usize| -> Vec<f64> {
            let mut m = vec![0.0; r * c];
            for j in 0..inner {
                let coef = match t.factor(k) {
                    Some(a) => a.get(j, e),
                    None => f64::from(u8::from(j == e)),
                };
                if coef == 0.0 {
                    continue;
                }
                for x in 0..r {
                    for y in 0..c {
                        m[x * c + y] += coef * core.get(x, j, y);
                    }
                }
            }
            m
        };
        let slices: Vec<Vec<f64>> = (0..sizes[k]).map(slice).collect();
        let mut next = Vec::with_capacity(rows.len() * sizes[k]);
        for row in &rows {
            for s in &slices {
                let mut v = vec![0.0; c];
                for x in 0..r {
                    if row[x] == 0.0 {
                        continue;
                    }
                    for y in 0..c {
                        v[y] += row[x] * s[x * c + y];
                    }
                }
                next.push(v);
            }
        }
        rows = next;
    }
    rows.into_iter().map(|v| v[0]).collect()
}

pub fn unravel(mut f: usize, sizes: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; sizes.len()];
    for k in (0..sizes.len()).rev() {
        idx[k] = f % sizes[k];
        f /= sizes[k];
    }
    idx
}

/// `|a − b| ≤ tol · max(|a|, |b|, scale)`; `scale` sets the magnitude below
/// which differences count as absolute.
pub fn rel_close(a: f64, b: f64, tol: f64, scale: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(scale)
}

pub fn random_matrix(n: usize, rng: &mut impl rand::Rng) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()).collect()
}
