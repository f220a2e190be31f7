//! Brute-force references.
//!
//! Everything here enumerates the raw search space directly and shares no
//! code with the tensor paths beyond the input types. Each oracle refuses to
//! run when the space exceeds its [`OracleBudget`].

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::games::{GameKind, GameSpec};
use crate::problems::knapsack::KnapsackProblem;
use crate::problems::sat::CnfFormula;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicU64, Ordering};

/// Cap on the number of configurations an oracle may enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    pub max_enumeration: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_enumeration: 1 << 24 }
    }
}

impl OracleBudget {
    pub fn new(max_enumeration: u64) -> Self {
        OracleBudget { max_enumeration }
    }

    fn check(&self, what: &str, size: Option<u64>) -> Result<u64> {
        match size {
            Some(s) if s <= self.max_enumeration => Ok(s),
            _ => Err(Error::Budget(format!(
                "{what}: search space {} exceeds the budget of {}",
                size.map_or_else(|| "overflowing u64".to_string(), |s| s.to_string()),
                self.max_enumeration
            ))),
        }
    }
}

const CHUNKS: usize = 64;

/// Compensated running sum.
#[derive(Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.comp
    }
}

/// `ν(S)` for the coalition whose members are the set bits of `mask`.
pub fn coalition_value(g: &GameSpec, mask: u64) -> f64 {
    let member = |i: usize| mask >> i & 1 == 1;
    match &g.kind {
        GameKind::Shoes { left } => {
            let l = (0..*left).filter(|&i| member(i)).count();
            let r = (*left..=2 * left).filter(|&i| member(i)).count();
            l.min(r) as f64
        }
        GameKind::Airport { costs } => {
            let mut best = 0.0f64;
            for (i, &c) in costs.iter().enumerate() {
                if member(i) && c > best {
                    best = c;
                }
            }
            best
        }
        GameKind::WeightedMajority { weights, threshold } => {
            let s: u64 = weights.iter().enumerate().filter(|(i, _)| member(*i)).map(|(_, w)| w).sum();
            if s >= *threshold {
                1.0
            } else {
                0.0
            }
        }
        GameKind::Bankruptcy { claims, estate } => {
            let outside: f64 = claims.iter().enumerate().filter(|(i, _)| !member(*i)).map(|(_, c)| c).sum();
            (estate - outside).max(0.0)
        }
        GameKind::OneSeller { prices } => {
            if !member(0) {
                return 0.0;
            }
            let mut best = 0.0f64;
            for (j, &a) in prices.iter().enumerate() {
                if member(j + 1) && a > best {
                    best = a;
                }
            }
            best
        }
    }
}

/// `π(k) = Σ_{S ⊆ T\{k}} p(|S|) (ν(S ∪ {k}) − ν(S))` by enumerating every
/// subset.
pub fn brute_payoff(g: &GameSpec, k: usize, budget: &OracleBudget, exec: Exec) -> Result<f64> {
    g.validate()?;
    let n = g.players();
    if n > 24 {
        return Err(Error::Budget(format!("{n} players exceed the brute-force limit of 24")));
    }
    if k >= n {
        return Err(Error::InvalidArgument(format!("player {k} outside 0..{n}")));
    }
    let total = budget.check("payoff", Some(1u64 << (n - 1)))?;
    let p: Vec<f64> = (0..n).map(|s| g.weights.weight(n, s)).collect();
    let low = (1u64 << k) - 1;
    let parts = exec.map_ranges(total, CHUNKS, |range| {
        let mut acc = Neumaier::default();
        for r in range {
            // Spread the n-1 bits of r around position k.
            let s = (r & low) | ((r & !low) << 1);
            let diff = coalition_value(g, s | 1 << k) - coalition_value(g, s);
            if diff != 0.0 {
                acc.add(p[s.count_ones() as usize] * diff);
            }
        }
        acc
    });
    let mut acc = Neumaier::default();
    for part in parts {
        acc.add(part.sum);
        acc.add(part.comp);
    }
    Ok(acc.value())
}

/// Payoffs of all players by enumeration.
pub fn brute_payoffs(g: &GameSpec, budget: &OracleBudget, exec: Exec) -> Result<Vec<f64>> {
    (0..g.players()).map(|k| brute_payoff(g, k, budget, exec)).collect()
}

/// Problems with an exact count of solutions.
#[derive(Clone, Debug)]
pub enum CountProblem<'a> {
    /// Non-attacking placements of `n` queens.
    Queens(usize),
    /// Satisfying assignments.
    Sat(&'a CnfFormula),
    /// Subsets of `{1..n}` whose sum is divisible by `m` (the empty set
    /// included).
    Subsets { n: usize, m: u64 },
    /// Index tuples whose values `arrays[k][i_k]` alternate strictly up and
    /// down.
    Sawtooth(&'a [Vec<i64>]),
    /// Assignments of `set` to `parts` labelled parts with equal sums.
    Partition { set: &'a [u64], parts: usize },
}

fn queens_from(n: usize, cols: u64, d1: u64, d2: u64, row: usize, nodes: &AtomicU64, cap: u64) -> Option<u64> {
    if nodes.fetch_add(1, Ordering::Relaxed) >= cap {
        return None;
    }
    if row == n {
        return Some(1);
    }
    let mut total = 0;
    for c in 0..n {
        let (a, b) = (row + c, row + n - 1 - c);
        if cols >> c & 1 == 0 && d1 >> a & 1 == 0 && d2 >> b & 1 == 0 {
            total += queens_from(n, cols | 1 << c, d1 | 1 << a, d2 | 1 << b, row + 1, nodes, cap)?;
        }
    }
    Some(total)
}

fn literal_true(l: i32, bits: u64) -> bool {
    let v = bits >> (l.unsigned_abs() - 1) & 1 == 1;
    if l > 0 {
        v
    } else {
        !v
    }
}

fn alternates(values: &[i64]) -> bool {
    let mut last = 0i64;
    for w in values.windows(2) {
        let step = (w[1] - w[0]).signum();
        if step == 0 || step == last {
            return false;
        }
        last = step;
    }
    true
}

fn product_size(sizes: impl IntoIterator<Item = usize>) -> Option<u64> {
    sizes.into_iter().try_fold(1u64, |a, n| a.checked_mul(n as u64))
}

fn unrank(mut r: u64, sizes: &[usize], out: &mut [usize]) {
    for (k, &n) in sizes.iter().enumerate().rev() {
        out[k] = (r % n as u64) as usize;
        r /= n as u64;
    }
}

/// Exhaustive count.
pub fn brute_count(problem: &CountProblem<'_>, budget: &OracleBudget, exec: Exec) -> Result<BigUint> {
    let sum = |parts: Vec<u64>| parts.into_iter().map(BigUint::from).fold(BigUint::zero(), |a, b| a + b);
    match problem {
        CountProblem::Queens(n) => {
            let n = *n;
            if n > 32 {
                return Err(Error::Budget(format!("queens n={n} is beyond enumeration")));
            }
            if n == 0 {
                return Ok(BigUint::from(1u8));
            }
            // Split on the first row's column; every visited node counts
            // against the budget.
            let nodes = AtomicU64::new(0);
            let cap = budget.max_enumeration;
            let parts = exec.map(n, |c| queens_from(n, 1 << c, 1 << c, 1 << (n - 1 - c), 1, &nodes, cap));
            match parts.into_iter().collect::<Option<Vec<u64>>>() {
                Some(p) => Ok(sum(p)),
                None => Err(Error::Budget(format!("queens n={n}: backtracking exceeds the budget of {cap} nodes"))),
            }
        }
        CountProblem::Sat(f) => {
            if f.num_vars > 63 {
                return Err(Error::Budget(format!("{} variables exceed the enumeration limit", f.num_vars)));
            }
            let total = budget.check("sat", Some(1u64 << f.num_vars))?;
            Ok(sum(exec.map_ranges(total, CHUNKS, |range| {
                range
                    .filter(|&bits| f.clauses.iter().all(|c| c.iter().any(|&l| literal_true(l, bits))))
                    .count() as u64
            })))
        }
        CountProblem::Subsets { n, m } => {
            if *m == 0 {
                return Err(Error::InvalidArgument("modulus must be positive".into()));
            }
            if *n > 63 {
                return Err(Error::Budget(format!("n={n} exceeds the enumeration limit")));
            }
            let total = budget.check("subsets", Some(1u64 << n))?;
            Ok(sum(exec.map_ranges(total, CHUNKS, |range| {
                range
                    .filter(|&bits| {
                        let s: u64 = (0..*n).filter(|i| bits >> i & 1 == 1).map(|i| i as u64 + 1).sum();
                        s % m == 0
                    })
                    .count() as u64
            })))
        }
        CountProblem::Sawtooth(arrays) => {
            let sizes: Vec<usize> = arrays.iter().map(Vec::len).collect();
            let total = budget.check("sawtooth", product_size(sizes.iter().copied()))?;
            Ok(sum(exec.map_ranges(total, CHUNKS, |range| {
                let mut idx = vec![0; sizes.len()];
                let mut vals = vec![0i64; sizes.len()];
                range
                    .filter(|&r| {
                        unrank(r, &sizes, &mut idx);
                        for (k, &i) in idx.iter().enumerate() {
                            vals[k] = arrays[k][i];
                        }
                        alternates(&vals)
                    })
                    .count() as u64
            })))
        }
        CountProblem::Partition { set, parts } => {
            if *parts == 0 {
                return Err(Error::InvalidArgument("need at least one part".into()));
            }
            let sizes = vec![*parts; set.len()];
            let total = budget.check("partition", product_size(sizes.iter().copied()))?;
            Ok(sum(exec.map_ranges(total, CHUNKS, |range| {
                let mut idx = vec![0; sizes.len()];
                let mut sums = vec![0u64; *parts];
                range
                    .filter(|&r| {
                        unrank(r, &sizes, &mut idx);
                        sums.iter_mut().for_each(|s| *s = 0);
                        for (&v, &p) in set.iter().zip(&idx) {
                            sums[p] += v;
                        }
                        sums.iter().all(|&s| s == sums[0])
                    })
                    .count() as u64
            })))
        }
    }
}

/// `Σ_σ Π_i a[i][σ(i)]` over all permutations (Heap's algorithm).
pub fn brute_permanent(a: &[Vec<f64>], budget: &OracleBudget) -> Result<f64> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::ShapeMismatch("permanent needs a square matrix".into()));
    }
    if n > 9 {
        return Err(Error::Budget(format!("{n}×{n} exceeds the permutation-sum limit of 9")));
    }
    budget.check("permanent", Some((1..=n as u64).product()))?;
    if n == 0 {
        return Ok(1.0);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let term = |p: &[usize]| p.iter().enumerate().map(|(i, &j)| a[i][j]).product::<f64>();
    let mut acc = Neumaier::default();
    acc.add(term(&perm));
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            acc.add(term(&perm));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(acc.value())
}

/// Best value and an optimal count vector, by enumerating every count
/// vector and checking each constraint in exact arithmetic.
pub fn brute_knapsack(p: &KnapsackProblem, budget: &OracleBudget, exec: Exec) -> Result<(f64, Vec<usize>)> {
    p.validate()?;
    let n = p.items();
    let sizes: Vec<usize> =
        (0..n).map(|k| p.bounds.as_ref().map_or(1, |b| b[k]) + 1).collect();
    let total = budget.check("knapsack", product_size(sizes.iter().copied()))?;
    let exact = |v: f64| BigRational::from_float(v).expect("validated finite");
    let weights: Vec<Vec<BigRational>> = p.weights.iter().map(|r| r.iter().map(|&w| exact(w)).collect()).collect();
    let caps: Vec<BigRational> = p.capacities.iter().map(|&c| exact(c)).collect();
    let best = exec.map_ranges(total, CHUNKS, |range| {
        let mut idx = vec![0; n];
        let mut best: Option<(f64, Vec<usize>)> = None;
        for r in range {
            unrank(r, &sizes, &mut idx);
            let feasible = weights.iter().zip(&caps).all(|(row, cap)| {
                let mut s = BigRational::zero();
                for (w, &c) in row.iter().zip(&idx) {
                    if c > 0 {
                        s += w * BigRational::from_integer(BigInt::from(c));
                    }
                }
                &s <= cap
            });
            if !feasible {
                continue;
            }
            let v: f64 = p.values.iter().zip(&idx).map(|(v, &c)| v * c as f64).sum();
            if best.as_ref().is_none_or(|b| v > b.0) {
                best = Some((v, idx.clone()));
            }
        }
        best
    });
    best.into_iter()
        .flatten()
        .fold(None, |acc: Option<(f64, Vec<usize>)>, b| match acc {
            Some(a) if a.0 >= b.0 => Some(a),
            _ => Some(b),
        })
        .ok_or_else(|| Error::Precondition("no feasible selection".into()))
}

/// Optimal value of a single-constraint knapsack with integer weights and
/// capacity, by dynamic programming over the capacity.
pub fn knapsack_dp(p: &KnapsackProblem) -> Result<f64> {
    p.validate()?;
    if p.weights.len() != 1 {
        return Err(Error::Unsupported("the dynamic program handles one constraint".into()));
    }
    let cap = p.capacities[0];
    if cap < 0.0 {
        return Err(Error::Precondition("no feasible selection".into()));
    }
    let integral = |v: f64| v.fract() == 0.0 && v < (1u64 << 32) as f64;
    if !integral(cap) || !p.weights[0].iter().all(|&w| integral(w)) {
        return Err(Error::Unsupported("the dynamic program needs integer weights".into()));
    }
    let cap = cap as usize;
    let mut dp = vec![0.0f64; cap + 1];
    for (k, (&v, &w)) in p.values.iter().zip(&p.weights[0]).enumerate() {
        let w = w as usize;
        let copies = p.bounds.as_ref().map_or(1, |b| b[k]);
        for _ in 0..copies {
            for c in (w..=cap).rev() {
                dp[c] = dp[c].max(dp[c - w] + v);
            }
        }
    }
    Ok(dp[cap])
}
