use crate::error::{Error, Result};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

/// Requirements on derivative-function states. The `Ord` impl is the
/// canonical order used to number states.
pub trait State: Clone + Eq + Hash + Ord + Debug + Send + Sync {}
impl<T: Clone + Eq + Hash + Ord + Debug + Send + Sync> State for T {}

type SideFn<'a, S> = dyn Fn(usize, usize, &S) -> Option<S> + Send + Sync + 'a;
type MidFn<'a, S> = dyn Fn(usize, &S, &S) -> Option<f64> + Send + Sync + 'a;

/// Chain of derivative functions describing one tensor.
///
/// The side callback receives `(mode, slice, state)`; the middle callback
/// receives `(slice, left_state, right_state)`. When the middle is the first
/// (last) mode the left (right) state is always the corresponding seed.
#[derive(Clone)]
pub struct DerivativeSpec<'a, S> {
    mode_sizes: Vec<usize>,
    middle: usize,
    left_seed: S,
    right_seed: S,
    frozen: Vec<Option<usize>>,
    side: Arc<SideFn<'a, S>>,
    mid: Arc<MidFn<'a, S>>,
}

impl<S: Debug> Debug for DerivativeSpec<'_, S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DerivativeSpec")
            .field("mode_sizes", &self.mode_sizes)
            .field("middle", &self.middle)
            .field("left_seed", &self.left_seed)
            .field("right_seed", &self.right_seed)
            .field("frozen", &self.frozen)
            .finish_non_exhaustive()
    }
}

impl<'a, S: State> DerivativeSpec<'a, S> {
    /// `middle` is 0-based. Both seeds are `S::default()`.
    pub fn new(
        mode_sizes: Vec<usize>,
        middle: usize,
        side: impl Fn(usize, usize, &S) -> Option<S> + Send + Sync + 'a,
        mid: impl Fn(usize, &S, &S) -> Option<f64> + Send + Sync + 'a,
    ) -> Result<Self>
    where
        S: Default,
    {
        Self::with_seeds(mode_sizes, middle, S::default(), S::default(), side, mid)
    }

    pub fn with_seeds(
        mode_sizes: Vec<usize>,
        middle: usize,
        left_seed: S,
        right_seed: S,
        side: impl Fn(usize, usize, &S) -> Option<S> + Send + Sync + 'a,
        mid: impl Fn(usize, &S, &S) -> Option<f64> + Send + Sync + 'a,
    ) -> Result<Self> {
        if mode_sizes.is_empty() {
            return Err(Error::InvalidArgument("a spec needs at least one mode".into()));
        }
        if mode_sizes.contains(&0) {
            return Err(Error::InvalidArgument(format!("mode sizes must be positive, got {mode_sizes:?}")));
        }
        if middle >= mode_sizes.len() {
            return Err(Error::InvalidArgument(format!(
                "middle index {middle} outside 0..{}",
                mode_sizes.len()
            )));
        }
        let d = mode_sizes.len();
        Ok(DerivativeSpec {
            mode_sizes,
            middle,
            left_seed,
            right_seed,
            frozen: vec![None; d],
            side: Arc::new(side),
            mid: Arc::new(mid),
        })
    }

    /// Restricts mode `k` to the single original slice `slice`; the mode
    /// then has size 1.
    pub fn freeze_mode(mut self, k: usize, slice: usize) -> Result<Self> {
        if k >= self.dim() {
            return Err(Error::InvalidArgument(format!("mode {k} outside 0..{}", self.dim())));
        }
        if slice >= self.mode_sizes[k] {
            return Err(Error::IndexOutOfRange { mode: k, index: slice, size: self.mode_sizes[k] });
        }
        let orig = self.frozen[k].unwrap_or(slice);
        self.frozen[k] = Some(orig);
        self.mode_sizes[k] = 1;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.mode_sizes.len()
    }

    pub fn mode_sizes(&self) -> &[usize] {
        &self.mode_sizes
    }

    pub fn middle(&self) -> usize {
        self.middle
    }

    pub fn left_seed(&self) -> &S {
        &self.left_seed
    }

    pub fn right_seed(&self) -> &S {
        &self.right_seed
    }

    #[inline]
    fn slice(&self, k: usize, i: usize) -> usize {
        self.frozen[k].unwrap_or(i)
    }

    /// Side function of mode `k` at (possibly frozen) slice `i`.
    #[inline]
    pub fn apply(&self, k: usize, i: usize, s: &S) -> Option<S> {
        (self.side)(k, self.slice(k, i), s)
    }

    /// Middle function at slice `i`.
    #[inline]
    pub fn apply_middle(&self, i: usize, left: &S, right: &S) -> Option<f64> {
        (self.mid)(self.slice(self.middle, i), left, right)
    }

    /// Evaluates one entry directly from the functions, without building
    /// cores. Any undefined step gives 0.
    pub fn eval(&self, idx: &[usize]) -> Result<f64> {
        if idx.len() != self.dim() {
            return Err(Error::ShapeMismatch(format!(
                "index of length {} for a spec of dimension {}",
                idx.len(),
                self.dim()
            )));
        }
        for (k, (&i, &n)) in idx.iter().zip(&self.mode_sizes).enumerate() {
            if i >= n {
                return Err(Error::IndexOutOfRange { mode: k, index: i, size: n });
            }
        }
        let l = self.middle;
        let mut a = self.left_seed.clone();
        for (k, &i) in idx.iter().enumerate().take(l) {
            match self.apply(k, i, &a) {
                Some(s) => a = s,
                None => return Ok(0.0),
            }
        }
        let mut b = self.right_seed.clone();
        for k in (l + 1..self.dim()).rev() {
            match self.apply(k, idx[k], &b) {
                Some(s) => b = s,
                None => return Ok(0.0),
            }
        }
        Ok(self.apply_middle(idx[l], &a, &b).unwrap_or(0.0))
    }
}
