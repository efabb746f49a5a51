//! Data-parallel helpers. With the `parallel` feature the maps below run on
//! the rayon pool unless sequential mode has been requested at runtime; the
//! output order always matches the input order.

use std::sync::atomic::{AtomicBool, Ordering};

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Forces the sequential code path even when the `parallel` feature is on.
pub fn set_sequential(sequential: bool) {
    FORCE_SEQUENTIAL.store(sequential, Ordering::SeqCst);
}

/// True when maps will actually fan out over rayon.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.load(Ordering::SeqCst)
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

/// Number of workers a map fans out over.
pub fn workers() -> usize {
    #[cfg(feature = "parallel")]
    {
        if is_parallel() {
            return rayon::current_num_threads();
        }
    }
    1
}

/// Splits `items` into about `2 * workers()` contiguous chunks, folds each
/// chunk with `fold`, and returns the per-chunk results in order.
pub fn fold_chunks<T, R, F>(items: &[T], fold: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&[T]) -> R + Sync + Send,
{
    if items.is_empty() {
        return Vec::new();
    }
    let size = items.len().div_ceil(2 * workers()).max(1);
    let chunks: Vec<&[T]> = items.chunks(size).collect();
    map(&chunks, |c| fold(c))
}
