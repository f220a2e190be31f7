//! Tensors whose ones-contraction gives a semivalue payoff.
//!
//! Every builder indexes coalitions by one binary mode per player (1 = in
//! the coalition). Player `k`'s payoff is
//! `π(k) = Σ_{S ⊆ T\{k}} p(|S|) (ν(S ∪ {k}) − ν(S))`.

use super::spec::{descending_order, GameKind, GameSpec};
use crate::constructor::DerivativeSpec;
use crate::error::Result;
use crate::tt::{Matrix, TtTensor};
use ordered_float::OrderedFloat;
use std::sync::Arc;

/// Tensors for one player's payoff.
#[derive(Clone, Debug)]
pub enum GameTensors {
    /// `p(|S|) ν(S ∪ {k})` and `p(|S|) ν(S)`, mode `k` frozen in each; the
    /// payoff is the difference of their ones-contractions.
    Difference { with_player: TtTensor, without_player: TtTensor },
    /// `p(|S|)` with mode `k` fixed at 0 and a TT-Tucker `ν` whose mode `k`
    /// holds the slice difference; the payoff is the ones-contraction of
    /// their elementwise product. Modes follow `order`.
    Product { weights: TtTensor, values: TtTensor, order: Vec<usize> },
    /// `p(|S|) (ν(S ∪ {k}) − ν(S))` over the other players directly.
    Single(TtTensor),
    /// One-player games: the payoff is a single term.
    Scalar(f64),
}

impl GameTensors {
    /// TT-ranks of every tensor involved.
    pub fn ranks(&self) -> Vec<Vec<usize>> {
        match self {
            GameTensors::Difference { with_player, without_player } => {
                vec![with_player.ranks().to_vec(), without_player.ranks().to_vec()]
            }
            GameTensors::Product { weights, values, .. } => vec![weights.ranks().to_vec(), values.ranks().to_vec()],
            GameTensors::Single(t) => vec![t.ranks().to_vec()],
            GameTensors::Scalar(_) => vec![],
        }
    }
}

/// Builds the tensors for player `k` (0-based).
pub fn build_game_tensors(g: &GameSpec, k: usize) -> Result<GameTensors> {
    g.validate()?;
    g.check_player(k)?;
    match &g.kind {
        GameKind::Shoes { left } => shoes(g, *left, k),
        GameKind::Airport { costs } => {
            let order = descending_order(costs);
            let sorted: Vec<f64> = order.iter().map(|&j| costs[j]).collect();
            let values = max_value_tensor(None, &sorted)?;
            product(g, values, order, k)
        }
        GameKind::OneSeller { prices } => {
            let mut order = vec![0];
            order.extend(descending_order(prices).into_iter().map(|j| j + 1));
            let sorted: Vec<f64> = order[1..].iter().map(|&j| prices[j - 1]).collect();
            let values = max_value_tensor(Some(()), &sorted)?;
            product(g, values, order, k)
        }
        GameKind::WeightedMajority { weights, threshold } => majority(g, weights, *threshold, k),
        GameKind::Bankruptcy { claims, estate } => bankruptcy(g, claims, *estate, k),
    }
}

fn weight_table(g: &GameSpec) -> Arc<Vec<f64>> {
    Arc::new(g.weights.table(g.players()))
}

fn shoes(g: &GameSpec, left: usize, k: usize) -> Result<GameTensors> {
    let n = 2 * left + 1;
    let p = weight_table(g);
    let build = |slice: usize| -> Result<TtTensor> {
        let p = p.clone();
        // The middle is the first right seller; left states count left
        // sellers, right states count the remaining right sellers.
        let shift = slice;
        DerivativeSpec::new(
            vec![2; n],
            left,
            |_, i, x: &u32| Some(x + i as u32),
            move |i, x, y| {
                let (x, y) = (*x as usize, *y as usize + i);
                let s = (x + y).checked_sub(shift)?;
                Some(x.min(y) as f64 * p.get(s).copied().unwrap_or(0.0))
            },
        )?
        .freeze_mode(k, slice)?
        .build()
    };
    Ok(GameTensors::Difference { with_player: build(1)?, without_player: build(0)? })
}

/// One step of the split maximum: slice 0 skips the player, slice 1 adds a
/// player after the first, slice 2 adds the first player.
fn max_step(i: usize, x: u8) -> Option<u8> {
    match (i, x) {
        (0, x) => Some(x),
        (1, 1) => Some(1),
        (2, 0) => Some(1),
        _ => None,
    }
}

/// `ν(S) = max_{j∈S} c_j` for descending `costs`, as TT-Tucker with
/// factors `[[1,0],[0,1],[0,c_j]]` (inner × external). With `seller`, mode
/// 0 is a seller that must be present and carries no factor.
pub(crate) fn max_value_tensor(seller: Option<()>, costs: &[f64]) -> Result<TtTensor> {
    let off = usize::from(seller.is_some());
    let d = costs.len() + off;
    let step = move |k: usize, i: usize, x: &u8| -> Option<u8> {
        if k < off {
            (i == 1).then_some(0)
        } else {
            max_step(i, *x)
        }
    };
    let sizes: Vec<usize> = (0..d).map(|k| if k < off { 2 } else { 3 }).collect();
    let t = DerivativeSpec::new(sizes, d - 1, step, move |i, x, _| {
        step(d - 1, i, x).map(|s| if s == 1 { 1.0 } else { 0.0 })
    })?
    .build()?;
    let mut factors = vec![None; d];
    for (j, &c) in costs.iter().enumerate() {
        factors[j + off] = Some(Matrix::new(3, 2, vec![1.0, 0.0, 0.0, 1.0, 0.0, c])?);
    }
    t.with_factors(factors)
}

/// `p(Σ i_j)` over `n` binary modes, middle at the centre.
pub(crate) fn count_weight_tensor(p: Arc<Vec<f64>>, n: usize) -> Result<TtTensor> {
    DerivativeSpec::new(
        vec![2; n],
        (n - 1) / 2,
        |_, i, x: &u32| Some(x + i as u32),
        move |i, x, y| Some(p.get(*x as usize + i + *y as usize).copied().unwrap_or(0.0)),
    )?
    .build()
}

fn product(g: &GameSpec, values: TtTensor, order: Vec<usize>, k: usize) -> Result<GameTensors> {
    let n = g.players();
    if n == 1 {
        let v = values.restrict_mode(0, &[-1.0, 1.0])?;
        let value = crate::tt::eval_entry(&v, &[0])?;
        return Ok(GameTensors::Scalar(g.weight(0) * value));
    }
    let pos = order.iter().position(|&j| j == k).expect("order is a permutation");
    let weights = count_weight_tensor(weight_table(g), n)?.fix_slice(pos, 0)?;
    let values = values.restrict_mode(pos, &[-1.0, 1.0])?;
    Ok(GameTensors::Product { weights, values, order })
}

fn others(n: usize, k: usize) -> Vec<usize> {
    (0..n).filter(|&j| j != k).collect()
}

fn majority(g: &GameSpec, weights: &[u64], m: u64, k: usize) -> Result<GameTensors> {
    let n = weights.len();
    let wk = weights[k];
    if n == 1 {
        return Ok(GameTensors::Scalar(if wk >= m { g.weight(0) } else { 0.0 }));
    }
    let w: Arc<Vec<u64>> = Arc::new(others(n, k).into_iter().map(|j| weights[j]).collect());
    let d = n - 1;
    let p = weight_table(g);
    let wl = w.clone();
    let last = w[d - 1];
    let t = DerivativeSpec::new(
        vec![2; d],
        d - 1,
        move |j, i, x: &(u64, u32)| {
            if i == 0 {
                return Some(*x);
            }
            let s = x.0 + wl[j];
            (s <= m).then_some((s, x.1 + 1))
        },
        move |i, x, _| {
            let s = x.0 + i as u64 * last;
            (s + wk >= m && m > s).then(|| p[x.1 as usize + i])
        },
    )?
    .build()?;
    Ok(GameTensors::Single(t))
}

type Claim = (OrderedFloat<f64>, u32);

fn bankruptcy(g: &GameSpec, claims: &[f64], estate: f64, k: usize) -> Result<GameTensors> {
    let n = claims.len();
    let ck = claims[k];
    let share = move |r: f64| if r > 0.0 { r - (r - ck).max(0.0) } else { 0.0 };
    if n == 1 {
        return Ok(GameTensors::Scalar(share(estate) * g.weight(0)));
    }
    let c: Arc<Vec<f64>> = Arc::new(others(n, k).into_iter().map(|j| claims[j]).collect());
    let d = n - 1;
    let p = weight_table(g);
    let cs = c.clone();
    let last = c[d - 1];
    // State: estate left after paying the outsiders seen so far, and the
    // coalition size. Once nothing is left, adding k changes nothing.
    let t = DerivativeSpec::with_seeds(
        vec![2; d],
        d - 1,
        (OrderedFloat(estate), 0),
        (OrderedFloat(0.0), 0),
        move |j, i, x: &Claim| {
            if i == 1 {
                return Some((x.0, x.1 + 1));
            }
            let r = x.0 .0 - cs[j];
            (r > 0.0).then_some((OrderedFloat(r), x.1))
        },
        move |i, x, _| {
            let r = x.0 .0;
            Some(match i {
                0 => share(r - last) * p[x.1 as usize],
                _ => share(r) * p[x.1 as usize + 1],
            })
        },
    )?
    .build()?;
    Ok(GameTensors::Single(t))
}
