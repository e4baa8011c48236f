//! Execution policy for the data-parallel loops (pattern enumeration, Monte
//! Carlo chunks, sweep points).
//!
//! With the `parallel` feature disabled every policy runs sequentially. All
//! reductions happen in a fixed order after the parallel map, so results do
//! not depend on the policy or the worker count.

/// How to evaluate an embarrassingly parallel map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecPolicy {
    Sequential,
    #[default]
    Parallel,
}

impl ExecPolicy {
    /// Whether this build can actually run in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// Maps `f` over `0..len`, returning results in index order.
    pub fn map_indexed<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            ExecPolicy::Parallel => {
                use rayon::prelude::*;
                (0..len).into_par_iter().map(f).collect()
            }
            _ => (0..len).map(f).collect(),
        }
    }

    /// Fallible variant of [`ExecPolicy::map_indexed`]; the first error in index order wins.
    pub fn try_map_indexed<T, E, F>(self, len: usize, f: F) -> Result<Vec<T>, E>
    where
        T: Send,
        E: Send,
        F: Fn(usize) -> Result<T, E> + Sync + Send,
    {
        self.map_indexed(len, f).into_iter().collect()
    }
}
