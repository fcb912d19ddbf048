use std::str::FromStr;

use thiserror::Error;

use crate::clause::{Clause, ClauseSet, Literal};
use crate::rng::{fnv1a, SplitMix64};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SelectError {
    #[error("every clause has fewer than two literals")]
    NoNonLiteralClause,
}

/// Picks the clause to split and the literal to split off.
///
/// Implementations must return a clause of `gamma` with at least two
/// literals and a literal of that clause, and must be deterministic in
/// `gamma`.
pub trait Selector: Sync {
    fn select(&self, gamma: &ClauseSet) -> Result<(Clause, Literal), SelectError>;
}

impl<F> Selector for F
where
    F: Fn(&ClauseSet) -> Result<(Clause, Literal), SelectError> + Sync,
{
    fn select(&self, gamma: &ClauseSet) -> Result<(Clause, Literal), SelectError> {
        self(gamma)
    }
}

/// Built-in selection policies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelectionStrategy {
    /// First non-unit clause in set order, first literal in canonical order.
    #[default]
    FirstFit,
    /// Widest clause, ties broken by canonical clause order; first literal.
    MaxWidth,
    /// Uniform clause and literal, drawn from a generator seeded by the
    /// seed mixed with a fingerprint of the clause set.
    Random { seed: u64 },
}

impl SelectionStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            SelectionStrategy::FirstFit => "first-fit",
            SelectionStrategy::MaxWidth => "max-width",
            SelectionStrategy::Random { .. } => "random",
        }
    }
}

impl FromStr for SelectionStrategy {
    type Err = String;

    /// `first-fit`, `max-width`, `random` (seed 0) or `random:<seed>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "first-fit" => Ok(SelectionStrategy::FirstFit),
            "max-width" => Ok(SelectionStrategy::MaxWidth),
            "random" => Ok(SelectionStrategy::Random { seed: 0 }),
            other => match other.strip_prefix("random:") {
                Some(seed) => seed
                    .parse()
                    .map(|seed| SelectionStrategy::Random { seed })
                    .map_err(|e| format!("bad random seed {seed:?}: {e}")),
                None => Err(format!(
                    "unknown strategy {other:?} (expected first-fit, max-width, random[:seed])"
                )),
            },
        }
    }
}

impl Selector for SelectionStrategy {
    fn select(&self, gamma: &ClauseSet) -> Result<(Clause, Literal), SelectError> {
        let mut candidates = gamma.iter().filter(|c| c.len() >= 2).peekable();
        if candidates.peek().is_none() {
            return Err(SelectError::NoNonLiteralClause);
        }
        let clause = match *self {
            SelectionStrategy::FirstFit => candidates.next().unwrap(),
            SelectionStrategy::MaxWidth => candidates
                .min_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)))
                .unwrap(),
            SelectionStrategy::Random { seed } => {
                let candidates: Vec<&Clause> = candidates.collect();
                let mut rng = SplitMix64::new(seed ^ fingerprint(gamma));
                let clause = candidates[rng.below(candidates.len() as u64) as usize];
                let lit = clause.literals()[rng.below(clause.len() as u64) as usize];
                return Ok((clause.clone(), lit));
            }
        };
        Ok((clause.clone(), clause.literals()[0]))
    }
}

/// Order-sensitive hash of a clause set's DIMACS encoding, each clause
/// terminated by 0.
fn fingerprint(gamma: &ClauseSet) -> u64 {
    fnv1a(
        gamma
            .iter()
            .flat_map(|c| c.literals().iter().map(|l| l.to_dimacs() as u64).chain([0])),
    )
}
