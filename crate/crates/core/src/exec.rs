//! Execution strategy helpers: a thin facade over rayon so the rest of the
//! crate (and the CLI) can run batch work in parallel when the `parallel`
//! feature is on and fall back to plain loops when it is off.

/// Applies `f` to every item, in parallel when available. Output order
/// matches input order either way.
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Send + Sync,
{
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

/// Runs two closures, concurrently when available, and returns both results.
pub fn join<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    {
        rayon::join(a, b)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (a(), b())
    }
}

/// Caps the global worker pool at `cap` threads. A no-op without the
/// `parallel` feature, and a no-op if a pool was already installed.
pub fn configure_threads(cap: Option<usize>) {
    #[cfg(feature = "parallel")]
    {
        if let Some(n) = cap {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = cap;
    }
}
