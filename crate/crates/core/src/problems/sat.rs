//! CNF formulas: model counting and model extraction.
//!
//! Each clause becomes an indicator over all variables with state "clause
//! satisfied yet" (0 or 1); the clause's last variable rejects state 0. The
//! clause tensors are multiplied in order of their last variable and reduced
//! exactly after each product.

use crate::constructor::DerivativeSpec;
use crate::error::{Error, Result};
use crate::search::find_nonzero;
use crate::tt::{count_exact, hadamard, reduce_exact, tt_round, TtTensor};
use num_bigint::BigInt;
use rand::Rng;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CnfFormula {
    pub num_vars: usize,
    /// Signed, 1-based literals.
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for c in &clauses {
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > num_vars {
                    return Err(Error::InvalidArgument(format!("literal {l} outside 1..={num_vars}")));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Whether `assignment[v]` (0-based variable) satisfies every clause.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let v = assignment[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    }

    /// Parses DIMACS `cnf` text.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut cur = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('%') {
                break;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(Error::Parse(format!("bad problem line: {line}")));
                }
                let v = parts[2].parse().map_err(|_| Error::Parse(format!("bad variable count in: {line}")))?;
                let c = parts[3].parse().map_err(|_| Error::Parse(format!("bad clause count in: {line}")))?;
                header = Some((v, c));
                continue;
            }
            if header.is_none() {
                return Err(Error::Parse("clause before the problem line".into()));
            }
            for tok in line.split_whitespace() {
                let l: i32 = tok.parse().map_err(|_| Error::Parse(format!("bad literal {tok}")))?;
                if l == 0 {
                    clauses.push(std::mem::take(&mut cur));
                } else {
                    cur.push(l);
                }
            }
        }
        let (v, c) = header.ok_or_else(|| Error::Parse("missing problem line".into()))?;
        if !cur.is_empty() {
            clauses.push(cur);
        }
        if clauses.len() != c {
            return Err(Error::Parse(format!("header declares {c} clauses, found {}", clauses.len())));
        }
        CnfFormula::new(v, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                s.push_str(&format!("{l} "));
            }
            s.push_str("0\n");
        }
        s
    }

    /// Random formula with `m` clauses of three distinct variables each.
    pub fn random_3cnf<R: Rng>(num_vars: usize, m: usize, rng: &mut R) -> Result<Self> {
        if num_vars < 3 {
            return Err(Error::InvalidArgument("3-CNF needs at least three variables".into()));
        }
        let clauses = (0..m)
            .map(|_| {
                let mut vars: Vec<i32> = Vec::with_capacity(3);
                while vars.len() < 3 {
                    let v = rng.random_range(1..=num_vars as i32);
                    if !vars.contains(&v) {
                        vars.push(v);
                    }
                }
                vars.into_iter().map(|v| if rng.random_bool(0.5) { v } else { -v }).collect()
            })
            .collect();
        CnfFormula::new(num_vars, clauses)
    }
}

/// Indicator of the assignments satisfying one clause (index 1 = true).
pub fn clause_tensor(num_vars: usize, clause: &[i32]) -> Result<TtTensor> {
    if num_vars == 0 {
        return Err(Error::InvalidArgument("formula has no variables".into()));
    }
    let d = num_vars;
    if clause.is_empty() {
        return DerivativeSpec::<u8>::new(vec![2; d], d - 1, |_, _, _| None, |_, _, _| None)?.build();
    }
    let mut pos = vec![false; d];
    let mut neg = vec![false; d];
    for &l in clause {
        let v = l.unsigned_abs() as usize - 1;
        if l > 0 {
            pos[v] = true;
        } else {
            neg[v] = true;
        }
    }
    let last = clause.iter().map(|l| l.unsigned_abs() as usize - 1).max().unwrap();
    let step = Arc::new(move |k: usize, i: usize, x: u8| -> Option<u8> {
        let sat = (i == 1 && pos[k]) || (i == 0 && neg[k]);
        let y = if sat { 1 } else { x };
        (k != last || y == 1).then_some(y)
    });
    let s2 = step.clone();
    DerivativeSpec::<u8>::new(vec![2; d], d - 1, move |k, i, x| step(k, i, *x), move |i, x, _| {
        s2(d - 1, i, *x).map(f64::from)
    })?
    .build()
}

fn all_ones(d: usize) -> Result<TtTensor> {
    DerivativeSpec::<u8>::new(vec![2; d], d - 1, |_, _, _| Some(0), |_, _, _| Some(1.0))?.build()
}

/// Product of all clause tensors. With `round_eps` the product is rounded
/// after every multiplication instead of reduced exactly.
pub fn sat_tensor(f: &CnfFormula, round_eps: Option<f64>) -> Result<TtTensor> {
    let mut order: Vec<&Vec<i32>> = f.clauses.iter().collect();
    order.sort_by_key(|c| c.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0));
    let mut t = all_ones(f.num_vars)?;
    for c in order {
        let ct = clause_tensor(f.num_vars, c)?;
        let h = hadamard(&t, &ct)?;
        t = match round_eps {
            Some(eps) => tt_round(&h, eps)?,
            None => reduce_exact(&h)?,
        };
    }
    Ok(t)
}

/// Number of satisfying assignments.
pub fn sat_count(f: &CnfFormula) -> Result<BigInt> {
    if f.num_vars == 0 {
        return Ok(BigInt::from(f.clauses.is_empty() as u8));
    }
    count_exact(&sat_tensor(f, None)?)
}

/// One satisfying assignment (index `v` is variable `v + 1`), verified
/// against the clauses.
pub fn sat_model(f: &CnfFormula) -> Result<Option<Vec<bool>>> {
    if f.num_vars == 0 {
        return Ok(f.clauses.is_empty().then(Vec::new));
    }
    let t = sat_tensor(f, None)?;
    let Some(r) = find_nonzero(&t)? else { return Ok(None) };
    let model: Vec<bool> = r.indices.iter().map(|&i| i == 1).collect();
    if !f.is_satisfied_by(&model) {
        return Err(Error::Precondition("extracted assignment violates a clause".into()));
    }
    Ok(Some(model))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trivial_formulas() {
        assert_eq!(sat_count(&CnfFormula::new(10, vec![]).unwrap()).unwrap(), BigInt::from(1024));
        let f = CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap();
        assert_eq!(sat_count(&f).unwrap(), BigInt::from(0));
        assert_eq!(sat_model(&f).unwrap(), None);
        let e = CnfFormula::new(3, vec![vec![]]).unwrap();
        assert_eq!(sat_count(&e).unwrap(), BigInt::from(0));
    }

    #[test]
    fn clause_indicator() {
        let t = clause_tensor(3, &[1, -3]).unwrap();
        let full = t.full(8).unwrap();
        for (f, v) in full.iter().enumerate() {
            let (x1, x3) = (f >> 2 & 1 == 1, f & 1 == 1);
            assert_eq!(*v, (x1 || !x3) as u8 as f64);
        }
        assert!(t.max_rank() <= 2);
    }

    #[test]
    fn random_formula_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let f = CnfFormula::random_3cnf(8, 20, &mut rng).unwrap();
            let brute = (0..256u32)
                .filter(|m| f.is_satisfied_by(&(0..8).map(|v| m >> (7 - v) & 1 == 1).collect::<Vec<_>>()))
                .count();
            assert_eq!(sat_count(&f).unwrap(), BigInt::from(brute));
            match sat_model(&f).unwrap() {
                Some(m) => assert!(f.is_satisfied_by(&m)),
                None => assert_eq!(brute, 0),
            }
        }
    }

    #[test]
    fn dimacs_round_trip() {
        let text = "c example\np cnf 3 2\n1 -3 0\n2 3\n-1 0\n";
        let f = CnfFormula::parse_dimacs(text).unwrap();
        assert_eq!(f.clauses, vec![vec![1, -3], vec![2, 3, -1]]);
        assert_eq!(CnfFormula::parse_dimacs(&f.to_dimacs()).unwrap(), f);
        assert!(CnfFormula::parse_dimacs("1 2 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 2 1\n1 5 0\n").is_err());
    }
}
