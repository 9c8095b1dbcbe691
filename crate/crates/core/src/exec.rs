//! Execution policy for the data-parallel kernels.
//!
//! Every parallel site in this crate fans out over an *ordered* list of
//! independent branches and merges with order-respecting combinators
//! (`find_map_first`, ordered `map`+`collect`), so results are identical for
//! any thread count — parallelism only changes wall time. The sequential path
//! is always compiled; the `parallel` cargo feature merely adds the rayon
//! implementation and makes it the default. Benchmarks compare the two
//! policies inside one build.

use serde::Serialize;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a kernel should traverse its root branches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parallelism {
    Sequential,
    /// Rayon work-stealing over root branches. Without the `parallel` feature
    /// this degrades to the sequential loop.
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

/// First `Some` produced over `items` in list order.
///
/// The rayon path uses `find_map_first`, which returns the same element as the
/// sequential scan while still short-circuiting trailing work.
pub fn find_map_first<T, R, F>(mode: Parallelism, items: Vec<T>, f: F) -> Option<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> Option<R> + Sync + Send,
{
    match mode {
        Parallelism::Sequential => items.into_iter().find_map(f),
        #[cfg(feature = "parallel")]
        Parallelism::Rayon => items.into_par_iter().find_map_first(f),
        #[cfg(not(feature = "parallel"))]
        Parallelism::Rayon => items.into_iter().find_map(f),
    }
}

/// Order-preserving map; the output index matches the input index.
pub fn map_collect<T, R, F>(mode: Parallelism, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    match mode {
        Parallelism::Sequential => items.into_iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Parallelism::Rayon => items.into_par_iter().map(f).collect(),
        #[cfg(not(feature = "parallel"))]
        Parallelism::Rayon => items.into_iter().map(f).collect(),
    }
}

/// Runs `f` inside a dedicated thread pool of the given size.
///
/// Thread-count independence of the kernels is tested by comparing outputs
/// under pools of different sizes. Without the `parallel` feature the closure
/// simply runs on the calling thread (thread count is irrelevant then).
#[cfg(feature = "parallel")]
pub fn with_thread_count<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool construction")
        .install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn with_thread_count<R: Send>(_threads: usize, f: impl FnOnce() -> R + Send) -> R {
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_map_first_returns_sequentially_first_match() {
        let items: Vec<usize> = (0..10_000).collect();
        let pick = |mode| find_map_first(mode, items.clone(), |x| if x % 97 == 13 { Some(x) } else { None });
        assert_eq!(pick(Parallelism::Sequential), Some(13));
        assert_eq!(pick(Parallelism::Rayon), Some(13));
    }

    #[test]
    fn map_collect_preserves_order() {
        let items: Vec<usize> = (0..1000).collect();
        let seq = map_collect(Parallelism::Sequential, items.clone(), |x| x * 2);
        let par = map_collect(Parallelism::Rayon, items, |x| x * 2);
        assert_eq!(seq, par);
    }

    #[test]
    fn pools_of_any_size_agree() {
        let work = || {
            let items: Vec<usize> = (0..500).collect();
            map_collect(Parallelism::Rayon, items, |x| x * x % 101)
        };
        let one = with_thread_count(1, work);
        let eight = with_thread_count(8, work);
        assert_eq!(one, eight);
    }
}
