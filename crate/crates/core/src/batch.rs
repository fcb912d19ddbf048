//! Solving many independent instances at once.
//!
//! Each instance is solved on its own; with the `parallel` feature the
//! instances are spread over the rayon pool, otherwise they run in order.
//! Results come back in input order either way.

use crate::builder::{buildresol, BuildError, BuildOptions, BuildStats, SelectionStrategy, SolveOutcome};
use crate::clause::ClauseSet;
use crate::oracle::{truth_table_sat_sequential, OracleError, OracleVerdict};

pub type SolveResult = Result<(SolveOutcome, BuildStats), BuildError>;

#[cfg(feature = "parallel")]
fn map_all<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_all<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

pub fn solve_all(
    instances: &[ClauseSet],
    strategy: SelectionStrategy,
    options: BuildOptions,
) -> Vec<SolveResult> {
    map_all(instances, |g| buildresol(g, strategy, options))
}

pub fn solve_all_sequential(
    instances: &[ClauseSet],
    strategy: SelectionStrategy,
    options: BuildOptions,
) -> Vec<SolveResult> {
    instances
        .iter()
        .map(|g| buildresol(g, strategy, options))
        .collect()
}

/// Truth-table verdicts. Each instance is enumerated sequentially; the
/// parallelism is across instances.
pub fn oracle_all(instances: &[ClauseSet], max_atoms: usize) -> Vec<Result<OracleVerdict, OracleError>> {
    map_all(instances, |g| truth_table_sat_sequential(g, max_atoms))
}
