//! Index-parallel helpers. With the `parallel` feature these run on the
//! global rayon pool; without it they are plain sequential loops. Exact
//! arithmetic makes the result independent of the schedule.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many items the sequential path is used even when `parallel` is on.
const MIN_PARALLEL_LEN: usize = 64;

/// `(0..len).map(f).collect()`, possibly in parallel.
pub fn tabulate<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if len >= MIN_PARALLEL_LEN {
        return (0..len).into_par_iter().map(f).collect();
    }
    (0..len).map(f).collect()
}

/// Maps a slice, possibly in parallel, preserving order.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if items.len() >= MIN_PARALLEL_LEN {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Returns the first index in `0..len` (smallest) for which `f` yields `Some`.
pub fn find_first<T, F>(len: usize, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if len >= MIN_PARALLEL_LEN {
        return (0..len)
            .into_par_iter()
            .filter_map(|i| f(i).map(|t| (i, t)))
            .min_by_key(|(i, _)| *i);
    }
    (0..len).find_map(|i| f(i).map(|t| (i, t)))
}

/// Counts indices in `0..len` satisfying `pred`.
pub fn count<F>(len: usize, pred: F) -> u64
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if len >= MIN_PARALLEL_LEN {
        return (0..len).into_par_iter().filter(|&i| pred(i)).count() as u64;
    }
    (0..len).filter(|&i| pred(i)).count() as u64
}

/// Whether the crate was built with the rayon backend.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
