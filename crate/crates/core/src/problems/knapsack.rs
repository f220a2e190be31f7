//! Bounded, multi-constraint knapsack.
//!
//! Index `i_k` is the number of copies of item `k`. The value tensor
//! `Σ i_k v_k` has explicit rank-2 cores; each constraint gets an indicator
//! whose state is the exact running weight, pruned as soon as it exceeds the
//! capacity. The product of the indicators and the value tensor is searched
//! greedily for a large entry.

use super::sum::linear_sum_rank2;
use crate::constructor::DerivativeSpec;
use crate::error::{Error, Result};
use crate::search::{find_nonzero, quasi_argmax};
use crate::tt::{hadamard, reduce_exact, tt_round, TtTensor};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct KnapsackProblem {
    pub values: Vec<f64>,
    /// One row per constraint, one column per item.
    pub weights: Vec<Vec<f64>>,
    pub capacities: Vec<f64>,
    /// Maximum copies per item; 1 for every item when absent.
    #[serde(default)]
    pub bounds: Option<Vec<usize>>,
    /// Round after every multiplication with this relative accuracy.
    #[serde(default)]
    pub round_eps: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct KnapsackSolution {
    /// Copies taken of each item.
    pub counts: Vec<usize>,
    pub value: f64,
    pub ranks: Vec<usize>,
}

fn rational(v: f64) -> Result<BigRational> {
    BigRational::from_float(v).ok_or_else(|| Error::InvalidArgument(format!("non-finite number {v}")))
}

impl KnapsackProblem {
    pub fn zero_one(values: Vec<f64>, weights: Vec<f64>, capacity: f64) -> Self {
        KnapsackProblem { values, weights: vec![weights], capacities: vec![capacity], bounds: None, round_eps: None }
    }

    /// Random 0-1 instance with integer values and weights in `1..=max` and
    /// capacity half the total weight.
    pub fn random_zero_one<R: Rng>(n: usize, max: u32, rng: &mut R) -> Self {
        let values: Vec<f64> = (0..n).map(|_| rng.random_range(1..=max) as f64).collect();
        let weights: Vec<f64> = (0..n).map(|_| rng.random_range(1..=max) as f64).collect();
        let cap = (weights.iter().sum::<f64>() / 2.0).floor();
        KnapsackProblem::zero_one(values, weights, cap)
    }

    pub fn items(&self) -> usize {
        self.values.len()
    }

    pub fn bound(&self, k: usize) -> usize {
        self.bounds.as_ref().map_or(1, |b| b[k])
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.items();
        if n == 0 {
            return Err(Error::InvalidArgument("knapsack needs at least one item".into()));
        }
        if self.weights.len() != self.capacities.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} weight rows for {} capacities",
                self.weights.len(),
                self.capacities.len()
            )));
        }
        if self.weights.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch("every weight row needs one entry per item".into()));
        }
        if let Some(b) = &self.bounds {
            if b.len() != n {
                return Err(Error::ShapeMismatch("one bound per item".into()));
            }
        }
        let finite_nonneg = |v: &f64| v.is_finite() && *v >= 0.0;
        if !self.values.iter().all(finite_nonneg) || !self.weights.iter().flatten().all(finite_nonneg) {
            return Err(Error::InvalidArgument("values and weights must be finite and nonnegative".into()));
        }
        if !self.capacities.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidArgument("capacities must be finite".into()));
        }
        Ok(())
    }

    /// Checks every constraint in exact arithmetic.
    pub fn is_feasible(&self, counts: &[usize]) -> bool {
        if counts.len() != self.items() || counts.iter().enumerate().any(|(k, &c)| c > self.bound(k)) {
            return false;
        }
        self.weights.iter().zip(&self.capacities).all(|(row, &cap)| {
            let mut s = BigRational::from_integer(BigInt::from(0));
            for (w, &c) in row.iter().zip(counts) {
                s += BigRational::from_float(*w).unwrap() * BigRational::from_integer(BigInt::from(c));
            }
            s <= BigRational::from_float(cap).unwrap()
        })
    }

    pub fn value_of(&self, counts: &[usize]) -> f64 {
        self.values.iter().zip(counts).map(|(v, &c)| v * c as f64).sum()
    }

    pub fn mode_sizes(&self) -> Vec<usize> {
        (0..self.items()).map(|k| self.bound(k) + 1).collect()
    }

    /// `Σ_k i_k v_k`.
    pub fn value_tensor(&self) -> Result<TtTensor> {
        let vecs: Vec<Vec<f64>> = (0..self.items())
            .map(|k| (0..=self.bound(k)).map(|j| j as f64 * self.values[k]).collect())
            .collect();
        linear_sum_rank2(&vecs)
    }

    /// Indicator of constraint `m`.
    pub fn constraint_indicator(&self, m: usize) -> Result<TtTensor> {
        let d = self.items();
        let w: Vec<BigRational> = self.weights[m].iter().map(|&v| rational(v)).collect::<Result<_>>()?;
        let cap = rational(self.capacities[m])?;
        let w = Arc::new(w);
        let cap = Arc::new(cap);
        let (w2, cap2) = (w.clone(), cap.clone());
        let add = |x: &BigRational, j: usize, w: &BigRational| x + w * BigRational::from_integer(BigInt::from(j));
        DerivativeSpec::<BigRational>::with_seeds(
            self.mode_sizes(),
            d - 1,
            BigRational::from_integer(BigInt::from(0)),
            BigRational::from_integer(BigInt::from(0)),
            move |k, j, x| {
                let y = add(x, j, &w[k]);
                (y <= *cap).then_some(y)
            },
            move |j, x, _| (add(x, j, &w2[d - 1]) <= *cap2).then_some(1.0),
        )?
        .build()
    }

    fn shrink(&self, t: TtTensor, exact: bool) -> Result<TtTensor> {
        match self.round_eps {
            Some(eps) => tt_round(&t, eps),
            None if exact => reduce_exact(&t),
            None => Ok(t),
        }
    }

    /// Product of all constraint indicators.
    pub fn feasibility_tensor(&self) -> Result<TtTensor> {
        self.validate()?;
        let mut t = self.constraint_indicator(0)?;
        for m in 1..self.weights.len() {
            t = self.shrink(hadamard(&t, &self.constraint_indicator(m)?)?, true)?;
        }
        Ok(t)
    }
}

/// Greedy search on `value ⊙ feasible`. Returns `None` for infeasible
/// instances. Feasibility of the answer is re-checked exactly.
pub fn knapsack_solve(p: &KnapsackProblem) -> Result<Option<KnapsackSolution>> {
    p.validate()?;
    if p.weights.is_empty() {
        let counts: Vec<usize> = (0..p.items()).map(|k| p.bound(k)).collect();
        let value = p.value_of(&counts);
        return Ok(Some(KnapsackSolution { counts, value, ranks: vec![1; p.items() + 1] }));
    }
    let feas = p.feasibility_tensor()?;
    let prod = p.shrink(hadamard(&feas, &p.value_tensor()?)?, false)?;
    let found = match quasi_argmax(&prod)? {
        Some(r) => Some(r.indices),
        // Every feasible choice is worth nothing; any feasible one will do.
        None => find_nonzero(&feas)?.map(|r| r.indices),
    };
    let Some(counts) = found else { return Ok(None) };
    if !p.is_feasible(&counts) {
        return Err(Error::Precondition(format!("selection {counts:?} violates a constraint")));
    }
    let value = p.value_of(&counts);
    Ok(Some(KnapsackSolution { counts, value, ranks: prod.ranks().to_vec() }))
}
