//! Runtime configuration shared by the enumeration kernels.

use serde::{Deserialize, Serialize};

/// Size limits. Exceeding one yields [`crate::Error::GuardExceeded`]
/// instead of an unbounded run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guards {
    /// Largest group order for subgroup, splitting and automorphism work.
    pub structural_order: usize,
    /// Largest group order for the sum-free DFS kernels (hard cap 128).
    pub dfs_order: usize,
    /// Largest group order for a full |SF(G)| census.
    pub census_order: usize,
    /// Largest |H| for exhaustive doubling tables.
    pub table_order: usize,
    /// Largest window (in elements) for window counting.
    pub window_size: usize,
    /// Largest |Aut(G)| that may be materialised while closing generators.
    pub aut_order: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            structural_order: 10_000,
            dfs_order: 64,
            census_order: 49,
            table_order: 25,
            window_size: 24,
            aut_order: 2_000_000,
        }
    }
}

/// Execution policy for the data-parallel kernels.
///
/// `Parallel` only differs from `Sequential` when the crate is built with
/// the `parallel` feature. Both produce identical output.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ctx {
    pub guards: Guards,
    pub exec: Exec,
}

impl Ctx {
    pub fn sequential() -> Self {
        Ctx {
            exec: Exec::Sequential,
            ..Ctx::default()
        }
    }

    pub fn with_exec(exec: Exec) -> Self {
        Ctx {
            exec,
            ..Ctx::default()
        }
    }
}

/// Order-preserving map over a work list, fanned out with rayon when
/// allowed.
pub(crate) fn par_map<T, R, F>(exec: Exec, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if exec == Exec::Parallel {
            use rayon::prelude::*;
            return items.into_par_iter().map(f).collect();
        }
    }
    let _ = exec;
    items.into_iter().map(f).collect()
}
