//! Execution strategy for the data-parallel kernels.
//!
//! Heavy loops (per-block norms, per-offset difference norms, per-scale
//! moduli) run through [`map_indexed`] / [`map_slice`]. With the `parallel`
//! feature enabled (the default) these fan out over rayon; otherwise they are
//! plain sequential loops. The strategy can also be switched off at runtime
//! with [`set_parallel`], which the benchmark suite uses to compare both
//! executions in one process.
//!
//! Results are collected in index order and reduced sequentially, so the
//! output is bit-identical across strategies and thread counts.

use std::sync::atomic::{AtomicBool, Ordering};

static PARALLEL: AtomicBool = AtomicBool::new(cfg!(feature = "parallel"));

/// Enable or disable the rayon execution at runtime.
///
/// Has no effect when the crate is built without the `parallel` feature; the
/// sequential fallback is then the only strategy.
pub fn set_parallel(on: bool) {
    PARALLEL.store(on && cfg!(feature = "parallel"), Ordering::Relaxed);
}

/// True when kernels currently fan out over rayon.
pub fn parallel_enabled() -> bool {
    PARALLEL.load(Ordering::Relaxed)
}

/// Size the global worker pool. Must be called before the first parallel
/// kernel runs; later calls fail because the pool is already built. Without
/// the `parallel` feature this is a no-op.
pub fn configure_threads(n: usize) -> Result<(), String> {
    #[cfg(feature = "parallel")]
    {
        return rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string());
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = n;
        Ok(())
    }
}

/// Map `f` over `0..n`, in parallel when enabled, preserving index order.
pub fn map_indexed<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// Map `f` over a slice, in parallel when enabled, preserving order.
pub fn map_slice<T, U, F>(xs: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        use rayon::prelude::*;
        return xs.par_iter().map(f).collect();
    }
    xs.iter().map(f).collect()
}

/// Sequential left-to-right sum. Used for every reduction over values that
/// were produced in parallel, so totals do not depend on the strategy.
pub fn sum_ordered(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, |acc, x| acc + x)
}
