//! Data-parallel helpers. With the `parallel` feature the closures run on the
//! rayon pool; without it (or with [`Parallelism::Sequential`]) they run in
//! order on the calling thread. Output order never depends on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Parallelism {
    #[default]
    Auto,
    Sequential,
}

/// Caps the worker threads of the global pool. Only the first call takes
/// effect.
pub fn set_threads(n: usize) -> Result<()> {
    if n == 0 {
        return Err(crate::error::Error::invalid("thread count must be positive"));
    }
    #[cfg(feature = "parallel")]
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
        log::warn!("thread pool already initialized: {e}");
    }
    Ok(())
}

impl Parallelism {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Auto
    }
}

pub(crate) fn map<T, R, F>(items: &[T], par: Parallelism, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.is_parallel() {
        return items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect();
    }
    let _ = par;
    items.iter().enumerate().map(|(i, t)| f(i, t)).collect()
}

pub(crate) fn map_range<R, F>(n: usize, par: Parallelism, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = par;
    (0..n).map(f).collect()
}

/// Fallible map; the reported error is the one with the lowest index.
pub(crate) fn try_map<T, R, F>(items: &[T], par: Parallelism, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> Result<R> + Sync + Send,
{
    map(items, par, f).into_iter().collect()
}

pub(crate) fn try_map_range<R, F>(n: usize, par: Parallelism, f: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(usize) -> Result<R> + Sync + Send,
{
    map_range(n, par, f).into_iter().collect()
}
