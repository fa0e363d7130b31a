//! Data-parallel helpers.
//!
//! Every data-parallel loop in the crate goes through these functions. With the
//! `parallel` feature they dispatch to rayon unless the process-wide mode has
//! been switched to [`Exec::Sequential`]; without the feature they always run
//! sequentially, so results never depend on the mode.

use std::sync::atomic::{AtomicU8, Ordering};

/// Execution mode for data-parallel loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

static MODE: AtomicU8 = AtomicU8::new(1);

/// Sets the process-wide execution mode.
pub fn set_mode(exec: Exec) {
    MODE.store(matches!(exec, Exec::Parallel) as u8, Ordering::Relaxed);
}

pub fn mode() -> Exec {
    if cfg!(feature = "parallel") && MODE.load(Ordering::Relaxed) == 1 {
        Exec::Parallel
    } else {
        Exec::Sequential
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode() == Exec::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Maps `f` over `0..n`, preserving order.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode() == Exec::Parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// Applies `f` to every element in place.
pub fn for_each_mut<T, F>(items: &mut [T], f: F)
where
    T: Send,
    F: Fn(&mut T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode() == Exec::Parallel {
        use rayon::prelude::*;
        items.par_iter_mut().for_each(f);
        return;
    }
    items.iter_mut().for_each(f);
}
