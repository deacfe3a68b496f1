//! Data-parallel helpers. With the `parallel` feature the work is spread over
//! the rayon pool; without it the same closures run in order on the calling
//! thread. Results always come back in input order.

/// Maps `f` over `items`, in parallel when `parallel` is set and the
/// feature is enabled.
pub fn map_ordered<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = parallel;
    items.iter().map(f).collect()
}

/// Whether parallel execution is compiled in.
pub const fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}
