//! Execution-strategy shim for the brute-force kernels.
//!
//! With the default `parallel` feature the hot loops fan out through
//! rayon; without it (or when a caller forces the sequential path, as
//! the benches do) the same closures run in order. Results are always
//! collected in input order, so output is byte-identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order.
pub fn map_collect<T, R, F>(items: Vec<T>, parallel: bool, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel {
            return items.into_par_iter().map(f).collect();
        }
    }
    let _ = parallel;
    items.into_iter().map(f).collect()
}

/// Filter-maps `f` over `items`, preserving order.
pub fn filter_map_collect<T, R, F>(items: Vec<T>, parallel: bool, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel {
            return items.into_par_iter().filter_map(f).collect();
        }
    }
    let _ = parallel;
    items.into_iter().filter_map(f).collect()
}
