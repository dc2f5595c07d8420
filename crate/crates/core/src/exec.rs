//! Execution policy for the data-parallel loops (integrand sampling and the
//! quadratic oracles). Every parallel loop writes each output slot from a
//! single sequential computation, so results are bit-identical for every
//! policy and thread count.

/// How to run the data-parallel loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise sequential.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// `(0..len).map(f).collect()`, in parallel when the policy allows.
pub(crate) fn map_indexed<T, F>(len: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().with_min_len(64).map(f).collect();
    }
    let _ = exec;
    (0..len).map(f).collect()
}
