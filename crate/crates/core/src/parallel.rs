//! Data-parallel fan-out for the sweep and verification workloads.
//!
//! All batch operations (grid scans, per-level verifications, per-ν
//! solves) funnel through [`par_map`], which preserves input order, so
//! results are bit-identical whether they ran on rayon or sequentially.

use serde::{Deserialize, Serialize};

/// How batch work is dispatched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parallelism {
    /// Plain in-order iteration on the calling thread.
    Sequential,
    /// Rayon work-stealing pool. Falls back to sequential when the
    /// crate's `parallel` feature is disabled.
    Rayon,
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Rayon
        } else {
            Parallelism::Sequential
        }
    }
}

/// Map `f` over `items`, in order. `Rayon` falls back to sequential
/// when the `parallel` feature is disabled.
pub fn par_map<T, R, F>(par: Parallelism, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    match par {
        Parallelism::Sequential => items.into_iter().map(f).collect(),
        Parallelism::Rayon => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.into_iter().map(f).collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        let xs: Vec<usize> = (0..100).collect();
        let seq = par_map(Parallelism::Sequential, xs.clone(), |x| x * x);
        let par = par_map(Parallelism::Rayon, xs, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(seq[7], 49);
    }
}
