//! Evaluation of many independent conditioning problems.
//!
//! With the `parallel` feature (on by default) the batch entry points fan
//! out over rayon's global pool; without it they run sequentially. The
//! `_sequential` variants are always available for comparison.

use crate::error::Result;
use crate::lattice::Proposition;
use crate::rules::{apply_rule, Prior, Revised, Rule};

/// Maps `f` over `items`, in parallel when the `parallel` feature is on.
/// Output order matches input order.
pub fn map_items<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_items_sequential(items, f)
    }
}

pub fn map_items_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Conditions every prior on the same event with the same rule.
pub fn condition_batch(rule: Rule, priors: &[Prior], event: &Proposition) -> Vec<Result<Revised>> {
    map_items(priors, |prior| apply_rule(rule, prior, event))
}

pub fn condition_batch_sequential(rule: Rule, priors: &[Prior], event: &Proposition) -> Vec<Result<Revised>> {
    map_items_sequential(priors, |prior| apply_rule(rule, prior, event))
}

/// Whether batch calls use worker threads in this build.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
