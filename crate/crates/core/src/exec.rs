//! Execution policy for data-parallel loops.
//!
//! With the `parallel` feature off, [`Exec::Parallel`] runs sequentially so
//! callers never need to branch on the feature themselves.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Whether work will actually be spread across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Maps `f` over `0..n`, preserving order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Splits `0..total` into at most `chunks` contiguous ranges and maps `f`
    /// over them, preserving order.
    pub fn map_ranges<T, F>(self, total: u64, chunks: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(std::ops::Range<u64>) -> T + Sync + Send,
    {
        let chunks = (chunks.max(1) as u64).min(total.max(1));
        let step = total.div_ceil(chunks);
        self.map(chunks as usize, |c| {
            let lo = (c as u64 * step).min(total);
            let hi = ((c as u64 + 1) * step).min(total);
            f(lo..hi)
        })
    }
}
