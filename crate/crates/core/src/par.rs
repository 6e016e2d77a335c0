//! Data-parallel helpers with a sequential fallback.
//!
//! Every helper returns the same value as its sequential reading: searches
//! report the first matching item in input order, so results never depend on
//! the schedule.

use crate::error::Result;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether the crate was built with the `parallel` feature.
pub const AVAILABLE: bool = cfg!(feature = "parallel");

pub(crate) fn map<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

/// First item (in input order) whose predicate is true or fails.
fn first_hit<T, F>(items: &[T], parallel: bool, f: F) -> Result<bool>
where
    T: Sync,
    F: Fn(&T) -> Result<bool> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return match items
            .par_iter()
            .map(f)
            .find_first(|r| !matches!(r, Ok(false)))
        {
            Some(r) => r,
            None => Ok(false),
        };
    }
    let _ = parallel;
    for item in items {
        match f(item) {
            Ok(false) => {}
            other => return other,
        }
    }
    Ok(false)
}

pub(crate) fn try_any<T, F>(items: &[T], parallel: bool, f: F) -> Result<bool>
where
    T: Sync,
    F: Fn(&T) -> Result<bool> + Sync + Send,
{
    first_hit(items, parallel, f)
}

pub(crate) fn try_all<T, F>(items: &[T], parallel: bool, f: F) -> Result<bool>
where
    T: Sync,
    F: Fn(&T) -> Result<bool> + Sync + Send,
{
    first_hit(items, parallel, |x| f(x).map(|b| !b)).map(|b| !b)
}

pub(crate) fn try_map<T, R, F>(items: &[T], parallel: bool, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync + Send,
{
    map(items, parallel, f).into_iter().collect()
}

pub(crate) fn join<A, B, RA, RB>(parallel: bool, a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return rayon::join(a, b);
    }
    let _ = parallel;
    (a(), b())
}
