//! Contractions against rank-one tensors.
//!
//! Every contraction sweeps from the left end to the middle core and from the
//! right end to the middle core, so a sparse side core costs one operation
//! per stored unit. Arithmetic is generic over [`Scalar`] so that counting
//! problems can run in exact big-integer arithmetic.

use super::core::{Core, Matrix};
use super::tensor::TtTensor;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Additions and multiplications actually performed, not counting additions
/// of zero or multiplications by zero or one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct OpCount {
    pub additions: u64,
    pub multiplications: u64,
}

impl OpCount {
    pub fn total(&self) -> u64 {
        self.additions + self.multiplications
    }
}

/// One weight vector per mode; together they describe a rank-one tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVectors(pub Vec<Vec<f64>>);

impl WeightVectors {
    pub fn ones(mode_sizes: &[usize]) -> Self {
        WeightVectors(mode_sizes.iter().map(|&n| vec![1.0; n]).collect())
    }

    pub fn one_hot(mode_sizes: &[usize], idx: &[usize]) -> Self {
        WeightVectors(
            mode_sizes
                .iter()
                .zip(idx)
                .map(|(&n, &i)| {
                    let mut w = vec![0.0; n];
                    if i < n {
                        w[i] = 1.0;
                    }
                    w
                })
                .collect(),
        )
    }
}

/// Result of a contraction: a float, or an exact integer in counting mode.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Float(f64),
    Exact(BigInt),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Float(v) => *v,
            Value::Exact(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn as_exact(&self) -> Option<&BigInt> {
        match self {
            Value::Exact(b) => Some(b),
            Value::Float(_) => None,
        }
    }
}

/// Arithmetic used by contractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ContractionMode {
    #[default]
    Float,
    /// Big-integer arithmetic; every core value and weight must be integral.
    Exact,
}

pub(crate) trait Scalar: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add_assign(&mut self, o: &Self);
    fn mul(&self, o: &Self) -> Self;
    fn from_f64(v: f64) -> Result<Self>;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_one(&self) -> bool {
        *self == 1.0
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn from_f64(v: f64) -> Result<Self> {
        Ok(v)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn from_f64(v: f64) -> Result<Self> {
        if !v.is_finite() || v.fract() != 0.0 {
            return Err(Error::NonIntegral(v));
        }
        <BigInt as FromPrimitive>::from_f64(v).ok_or(Error::NonIntegral(v))
    }
}

#[inline]
fn cmul<T: Scalar>(a: &T, b: &T, ops: &mut OpCount) -> T {
    if a.is_zero() || b.is_zero() {
        T::zero()
    } else if a.is_one() {
        b.clone()
    } else if b.is_one() {
        a.clone()
    } else {
        ops.multiplications += 1;
        a.mul(b)
    }
}

#[inline]
fn cadd<T: Scalar>(dst: &mut T, x: T, ops: &mut OpCount) {
    if x.is_zero() {
        return;
    }
    if dst.is_zero() {
        *dst = x;
    } else {
        ops.additions += 1;
        dst.add_assign(&x);
    }
}

fn check_weights(t: &TtTensor, w: &WeightVectors) -> Result<()> {
    let sizes = t.mode_sizes();
    if w.0.len() != sizes.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} weight vectors for {} modes",
            w.0.len(),
            sizes.len()
        )));
    }
    for (k, (v, &n)) in w.0.iter().zip(&sizes).enumerate() {
        if v.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "weight vector {k} has length {} but the mode has size {n}",
                v.len()
            )));
        }
    }
    Ok(())
}

/// Converts external weights to inner slice weights through the factor.
fn inner_weights<T: Scalar>(factor: Option<&Matrix>, w: &[f64], ops: &mut OpCount) -> Result<Vec<T>> {
    let ext: Vec<T> = w.iter().map(|&v| T::from_f64(v)).collect::<Result<_>>()?;
    let Some(a) = factor else {
        return Ok(ext);
    };
    let mut out = Vec::with_capacity(a.rows());
    for j in 0..a.rows() {
        let mut s = T::zero();
        for (i, e) in ext.iter().enumerate() {
            let t = cmul(&T::from_f64(a.get(j, i))?, e, ops);
            cadd(&mut s, t, ops);
        }
        out.push(s);
    }
    Ok(out)
}

fn core_values<T: Scalar>(core: &Core, slice: usize) -> Result<Vec<(usize, usize, T)>> {
    core.entries(slice).into_iter().map(|(x, y, v)| Ok((x, y, T::from_f64(v)?))).collect()
}

/// `out[y] = Σ_{x,i} v[x] w[i] G(x,i,y)`.
fn step_left<T: Scalar>(core: &Core, v: &[T], w: &[T], ops: &mut OpCount) -> Result<Vec<T>> {
    let [_, n, c] = core.shape();
    let mut out = vec![T::zero(); c];
    match core {
        Core::Sparse(s) => {
            for (i, wi) in w.iter().enumerate().take(n) {
                if wi.is_zero() {
                    continue;
                }
                match s.values(i) {
                    None => {
                        for &(x, y) in s.coords(i) {
                            let t = cmul(&v[x as usize], wi, ops);
                            cadd(&mut out[y as usize], t, ops);
                        }
                    }
                    Some(vals) => {
                        for (&(x, y), &g) in s.coords(i).iter().zip(vals) {
                            let g = T::from_f64(g)?;
                            let t = cmul(&cmul(&v[x as usize], &g, ops), wi, ops);
                            cadd(&mut out[y as usize], t, ops);
                        }
                    }
                }
            }
        }
        Core::Dense(d) => {
            for (x, vx) in v.iter().enumerate() {
                if vx.is_zero() {
                    continue;
                }
                for (i, wi) in w.iter().enumerate() {
                    let a = cmul(vx, wi, ops);
                    if a.is_zero() {
                        continue;
                    }
                    for (y, o) in out.iter_mut().enumerate() {
                        let g = d.get(x, i, y);
                        if g != 0.0 {
                            let t = cmul(&a, &T::from_f64(g)?, ops);
                            cadd(o, t, ops);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `out[x] = Σ_{i,y} G(x,i,y) w[i] v[y]`.
fn step_right<T: Scalar>(core: &Core, v: &[T], w: &[T], ops: &mut OpCount) -> Result<Vec<T>> {
    let [r, n, _] = core.shape();
    let mut out = vec![T::zero(); r];
    match core {
        Core::Sparse(s) => {
            for (i, wi) in w.iter().enumerate().take(n) {
                if wi.is_zero() {
                    continue;
                }
                match s.values(i) {
                    None => {
                        for &(x, y) in s.coords(i) {
                            let t = cmul(&v[y as usize], wi, ops);
                            cadd(&mut out[x as usize], t, ops);
                        }
                    }
                    Some(vals) => {
                        for (&(x, y), &g) in s.coords(i).iter().zip(vals) {
                            let g = T::from_f64(g)?;
                            let t = cmul(&cmul(&v[y as usize], &g, ops), wi, ops);
                            cadd(&mut out[x as usize], t, ops);
                        }
                    }
                }
            }
        }
        Core::Dense(d) => {
            for (y, vy) in v.iter().enumerate() {
                if vy.is_zero() {
                    continue;
                }
                for (i, wi) in w.iter().enumerate() {
                    let a = cmul(vy, wi, ops);
                    if a.is_zero() {
                        continue;
                    }
                    for (x, o) in out.iter_mut().enumerate() {
                        let g = d.get(x, i, y);
                        if g != 0.0 {
                            let t = cmul(&a, &T::from_f64(g)?, ops);
                            cadd(o, t, ops);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `Σ_i w[i] · vlᵀ G_i vr`, reducing each slice along the larger rank first.
fn step_middle<T: Scalar>(core: &Core, vl: &[T], vr: &[T], w: &[T], ops: &mut OpCount) -> Result<T> {
    let [rl, n, rr] = core.shape();
    let mut total = T::zero();
    for (i, wi) in w.iter().enumerate().take(n) {
        if wi.is_zero() {
            continue;
        }
        let mut s = T::zero();
        match core {
            Core::Sparse(_) => {
                for (x, y, g) in core_values::<T>(core, i)? {
                    let t = cmul(&cmul(&vl[x], &g, ops), &vr[y], ops);
                    cadd(&mut s, t, ops);
                }
            }
            Core::Dense(d) => {
                if rl <= rr {
                    for (x, vx) in vl.iter().enumerate() {
                        if vx.is_zero() {
                            continue;
                        }
                        let mut u = T::zero();
                        for (y, vy) in vr.iter().enumerate() {
                            let g = d.get(x, i, y);
                            if g != 0.0 {
                                let t = cmul(&T::from_f64(g)?, vy, ops);
                                cadd(&mut u, t, ops);
                            }
                        }
                        let t = cmul(vx, &u, ops);
                        cadd(&mut s, t, ops);
                    }
                } else {
                    for (y, vy) in vr.iter().enumerate() {
                        if vy.is_zero() {
                            continue;
                        }
                        let mut u = T::zero();
                        for (x, vx) in vl.iter().enumerate() {
                            let g = d.get(x, i, y);
                            if g != 0.0 {
                                let t = cmul(vx, &T::from_f64(g)?, ops);
                                cadd(&mut u, t, ops);
                            }
                        }
                        let t = cmul(&u, vy, ops);
                        cadd(&mut s, t, ops);
                    }
                }
            }
        }
        let t = cmul(&s, wi, ops);
        cadd(&mut total, t, ops);
    }
    Ok(total)
}

pub(crate) fn sweep<T: Scalar>(t: &TtTensor, w: &WeightVectors, ops: &mut OpCount) -> Result<T> {
    check_weights(t, w)?;
    let d = t.dim();
    let l = t.middle();
    let mut vl = vec![T::one()];
    for k in 0..l {
        let wi = inner_weights::<T>(t.factor(k), &w.0[k], ops)?;
        vl = step_left(t.core(k), &vl, &wi, ops)?;
    }
    let mut vr = vec![T::one()];
    for k in (l + 1..d).rev() {
        let wi = inner_weights::<T>(t.factor(k), &w.0[k], ops)?;
        vr = step_right(t.core(k), &vr, &wi, ops)?;
    }
    let wl = inner_weights::<T>(t.factor(l), &w.0[l], ops)?;
    step_middle(t.core(l), &vl, &vr, &wl, ops)
}

/// Single entry of `t`.
pub fn eval_entry(t: &TtTensor, idx: &[usize]) -> Result<f64> {
    let sizes = t.mode_sizes();
    if idx.len() != sizes.len() {
        return Err(Error::ShapeMismatch(format!(
            "index of length {} for a tensor of dimension {}",
            idx.len(),
            sizes.len()
        )));
    }
    for (k, (&i, &n)) in idx.iter().zip(&sizes).enumerate() {
        if i >= n {
            return Err(Error::IndexOutOfRange { mode: k, index: i, size: n });
        }
    }
    let mut ops = OpCount::default();
    sweep::<f64>(t, &WeightVectors::one_hot(&sizes, idx), &mut ops)
}

/// Full contraction of `t` with the rank-one tensor `w_1 ⊗ … ⊗ w_d`.
pub fn convolve_rank_one(t: &TtTensor, w: &WeightVectors) -> Result<(f64, OpCount)> {
    let mut ops = OpCount::default();
    let v = sweep::<f64>(t, w, &mut ops)?;
    Ok((v, ops))
}

/// Sums every free mode and selects the slices in `fixed` (mode → slice).
pub fn contract_modes(t: &TtTensor, fixed: &BTreeMap<usize, usize>, mode: ContractionMode) -> Result<Value> {
    let sizes = t.mode_sizes();
    let mut w = WeightVectors::ones(&sizes);
    for (&k, &i) in fixed {
        if k >= sizes.len() {
            return Err(Error::InvalidArgument(format!("mode {k} outside 0..{}", sizes.len())));
        }
        if i >= sizes[k] {
            return Err(Error::IndexOutOfRange { mode: k, index: i, size: sizes[k] });
        }
        w.0[k] = vec![0.0; sizes[k]];
        w.0[k][i] = 1.0;
    }
    let mut ops = OpCount::default();
    Ok(match mode {
        ContractionMode::Float => Value::Float(sweep::<f64>(t, &w, &mut ops)?),
        ContractionMode::Exact => Value::Exact(sweep::<BigInt>(t, &w, &mut ops)?),
    })
}

/// Sum of all entries in exact arithmetic.
pub fn count_exact(t: &TtTensor) -> Result<BigInt> {
    let mut ops = OpCount::default();
    sweep::<BigInt>(t, &WeightVectors::ones(&t.mode_sizes()), &mut ops)
}

/// Upper bound on the operations needed to contract a tensor with sparse
/// side cores against a rank-one tensor, with the middle core at `l`
/// (0-based).
pub fn conv_op_bound(t: &TtTensor, l: usize) -> u128 {
    let r = t.ranks();
    let n: Vec<usize> = t.cores().iter().map(|c| c.shape()[1]).collect();
    let mut total: u128 = 0;
    for k in 0..t.dim() {
        let nk = n[k] as u128;
        if k < l {
            total += nk * r[k] as u128;
        } else if k > l {
            total += nk * r[k + 1] as u128;
        } else {
            let (a, b) = (r[k] as u128, r[k + 1] as u128);
            total += nk * (a * b + a.min(b));
        }
    }
    total
}

fn slice_combination(t: &TtTensor, k: usize, w: &[f64]) -> Vec<(usize, usize, f64)> {
    // Entries of Σ_i w_i · (external slice i of core k).
    let core = t.core(k);
    let n = core.shape()[1];
    let inner: Vec<f64> = match t.factor(k) {
        Some(a) => (0..n).map(|j| (0..a.cols()).map(|i| a.get(j, i) * w[i]).sum()).collect(),
        None => w.to_vec(),
    };
    let mut acc: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for (j, &c) in inner.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        for (x, y, v) in core.entries(j) {
            *acc.entry((x, y)).or_insert(0.0) += c * v;
        }
    }
    acc.into_iter().filter(|e| e.1 != 0.0).map(|((x, y), v)| (x, y, v)).collect()
}

/// `Σ_idx a[idx] · b[idx] · Π_k w_k[idx_k]` without materializing the
/// Hadamard product. Factors of both operands are applied on the fly.
pub fn contract_product(a: &TtTensor, b: &TtTensor, w: &WeightVectors) -> Result<f64> {
    if a.mode_sizes() != b.mode_sizes() {
        return Err(Error::ShapeMismatch(format!(
            "mode sizes {:?} and {:?} differ",
            a.mode_sizes(),
            b.mode_sizes()
        )));
    }
    check_weights(a, w)?;
    let sizes = a.mode_sizes();
    // v is r_a × r_b, row-major.
    let mut v = vec![1.0];
    let mut rb = 1usize;
    for k in 0..a.dim() {
        let ca = a.core(k).shape()[2];
        let cb = b.core(k).shape()[2];
        let mut next = vec![0.0; ca * cb];
        for i in 0..sizes[k] {
            let wi = w.0[k][i];
            if wi == 0.0 {
                continue;
            }
            let mut e = vec![0.0; sizes[k]];
            e[i] = 1.0;
            let ea = slice_combination(a, k, &e);
            if ea.is_empty() {
                continue;
            }
            let eb = slice_combination(b, k, &e);
            for &(xa, ya, va) in &ea {
                for &(xb, yb, vb) in &eb {
                    let s = v[xa * rb + xb];
                    if s != 0.0 {
                        next[ya * cb + yb] += wi * va * vb * s;
                    }
                }
            }
        }
        v = next;
        rb = cb;
    }
    Ok(v[0])
}
