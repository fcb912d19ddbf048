//! Refutation construction by recursive clause splitting.
//!
//! To refute Γ = Δ ∪ {A ∪ {L}}: refute Δ ∪ {A} and Δ ∪ {L} recursively, add
//! `L` back to the premise `A` of the first refutation and push it down to
//! the root, which then reads either `[]` or `{L}`. In the latter case the
//! second refutation is grafted below it on its premise `{L}`.
//!
//! When a branch is satisfiable its model also satisfies Γ, since `A` and
//! `{L}` are both subsets of `A ∪ {L}`. That is returned instead of a
//! refutation, which makes the procedure a certifying decision procedure.

mod select;
mod transform;

use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use crate::clause::{Assignment, Atom, Clause, ClauseSet, Literal};
use crate::dag::{DagError, ResolutionDag};

pub use select::{SelectError, SelectionStrategy, Selector};
pub use transform::{graft, percolate, percolate_mapped, GraftError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResourceBudget {
    pub max_nodes: usize,
    pub max_depth: usize,
}

impl Default for ResourceBudget {
    fn default() -> Self {
        ResourceBudget {
            max_nodes: 1_000_000,
            max_depth: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub recursive_calls: u64,
    /// Size of the returned DAG (0 for a model).
    pub dag_nodes: u64,
    pub max_depth: u64,
    pub percolations: u64,
    pub grafts: u64,
    /// Refutations returned without grafting: a percolated root that is
    /// already empty, or a branch refutation that only uses input clauses.
    pub shortcuts: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Refutation(ResolutionDag),
    /// Total over the input's atoms.
    Model(Assignment),
}

impl SolveOutcome {
    pub fn is_unsat(&self) -> bool {
        matches!(self, SolveOutcome::Refutation(_))
    }

    pub fn refutation(&self) -> Option<&ResolutionDag> {
        match self {
            SolveOutcome::Refutation(d) => Some(d),
            SolveOutcome::Model(_) => None,
        }
    }

    pub fn model(&self) -> Option<&Assignment> {
        match self {
            SolveOutcome::Model(m) => Some(m),
            SolveOutcome::Refutation(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BudgetLimit {
    Nodes(usize),
    Depth(usize),
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("resource budget exhausted ({limit:?})")]
    BudgetExhausted { limit: BudgetLimit, stats: BuildStats },
    #[error("selector returned an invalid choice: {0}")]
    BadSelection(String),
    #[error(transparent)]
    Select(#[from] SelectError),
    #[error("internal step failed: {0}")]
    Internal(String),
}

impl BuildError {
    pub fn stats(&self) -> Option<&BuildStats> {
        match self {
            BuildError::BudgetExhausted { stats, .. } => Some(stats),
            _ => None,
        }
    }
}

impl From<DagError> for BuildError {
    fn from(e: DagError) -> Self {
        BuildError::Internal(e.to_string())
    }
}

impl From<GraftError> for BuildError {
    fn from(e: GraftError) -> Self {
        BuildError::Internal(e.to_string())
    }
}

/// One split of Γ into the two branch sets.
pub struct Split<'a> {
    pub depth: usize,
    pub gamma: &'a ClauseSet,
    pub clause: &'a Clause,
    pub literal: Literal,
    /// Δ ∪ {A}.
    pub rest_branch: &'a ClauseSet,
    /// Δ ∪ {L}.
    pub literal_branch: &'a ClauseSet,
}

/// Hooks into the recursion. All methods default to no-ops.
pub trait BuildObserver: Sync {
    fn on_split(&self, _split: &Split<'_>) {}

    /// `refuted` is the first branch's refutation, `percolated` its image
    /// after percolation.
    fn on_percolate(&self, _depth: usize, _refuted: &ResolutionDag, _percolated: &ResolutionDag) {}

    fn on_graft(
        &self,
        _depth: usize,
        _lower: &ResolutionDag,
        _upper: &ResolutionDag,
        _result: &ResolutionDag,
    ) {
    }
}

struct NoObserver;

impl BuildObserver for NoObserver {}

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub budget: ResourceBudget,
    /// Always compute both branches before combining. Off by default; the
    /// second branch is then computed only when grafting needs it.
    pub eager: bool,
    /// Let unit clauses drive the search. A complementary pair of units is
    /// refuted on the spot, consistent units that hit every wider clause are
    /// returned as a model, a wider clause containing a unit is dropped, and
    /// a wider clause containing the complement of a unit is split on that
    /// literal before the selector is consulted. On by default. When off,
    /// only sets made entirely of units end the recursion and every split
    /// comes from the selector.
    pub early_exits: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            budget: ResourceBudget::default(),
            eager: false,
            early_exits: true,
        }
    }
}

#[derive(Default)]
struct Counters {
    calls: AtomicU64,
    max_depth: AtomicU64,
    percolations: AtomicU64,
    grafts: AtomicU64,
    shortcuts: AtomicU64,
}

impl Counters {
    fn snapshot(&self, dag_nodes: u64) -> BuildStats {
        BuildStats {
            recursive_calls: self.calls.load(Ordering::Relaxed),
            dag_nodes,
            max_depth: self.max_depth.load(Ordering::Relaxed),
            percolations: self.percolations.load(Ordering::Relaxed),
            grafts: self.grafts.load(Ordering::Relaxed),
            shortcuts: self.shortcuts.load(Ordering::Relaxed),
        }
    }

    fn bump(counter: &AtomicU64) {
        counter.fetch_add(1, Ordering::Relaxed);
    }
}

struct Ctx<'a> {
    selector: &'a dyn Selector,
    observer: &'a dyn BuildObserver,
    options: BuildOptions,
    counters: Counters,
}

/// Branch result before totalization. Models only mention the atoms of the
/// unit clauses at the base case.
enum Partial {
    Refuted(ResolutionDag),
    Sat(Assignment),
}

/// Solves `gamma` with one of the built-in strategies.
pub fn buildresol(
    gamma: &ClauseSet,
    strategy: SelectionStrategy,
    options: BuildOptions,
) -> Result<(SolveOutcome, BuildStats), BuildError> {
    build_with(gamma, &strategy, &NoObserver, options)
}

/// Solves `gamma` with a custom selector and observer.
pub fn build_with(
    gamma: &ClauseSet,
    selector: &dyn Selector,
    observer: &dyn BuildObserver,
    options: BuildOptions,
) -> Result<(SolveOutcome, BuildStats), BuildError> {
    let ctx = Ctx {
        selector,
        observer,
        options,
        counters: Counters::default(),
    };
    let outcome = match build(&ctx, gamma, 0)? {
        Partial::Refuted(dag) => SolveOutcome::Refutation(dag),
        Partial::Sat(mut model) => {
            model.totalize(gamma.atoms());
            SolveOutcome::Model(model)
        }
    };
    let nodes = outcome.refutation().map_or(0, |d| d.len() as u64);
    Ok((outcome, ctx.counters.snapshot(nodes)))
}

fn exhausted(ctx: &Ctx<'_>, limit: BudgetLimit) -> BuildError {
    BuildError::BudgetExhausted {
        limit,
        stats: ctx.counters.snapshot(0),
    }
}

fn within_nodes(ctx: &Ctx<'_>, dag: ResolutionDag) -> Result<ResolutionDag, BuildError> {
    if dag.len() > ctx.options.budget.max_nodes {
        return Err(exhausted(ctx, BudgetLimit::Nodes(ctx.options.budget.max_nodes)));
    }
    Ok(dag)
}

fn uses_only(dag: &ResolutionDag, gamma: &ClauseSet) -> bool {
    dag.leaves().all(|n| gamma.contains(&n.clause))
}

fn build(ctx: &Ctx<'_>, gamma: &ClauseSet, depth: usize) -> Result<Partial, BuildError> {
    Counters::bump(&ctx.counters.calls);
    ctx.counters
        .max_depth
        .fetch_max(depth as u64, Ordering::Relaxed);
    if depth > ctx.options.budget.max_depth {
        return Err(exhausted(ctx, BudgetLimit::Depth(ctx.options.budget.max_depth)));
    }

    if gamma.contains_empty() {
        let mut dag = ResolutionDag::new();
        dag.add_leaf(Clause::empty());
        return Ok(Partial::Refuted(dag));
    }

    let units: HashSet<Literal> = gamma
        .iter()
        .filter(|c| c.is_unit())
        .map(|c| c.literals()[0])
        .collect();
    let all_units = units.len() == gamma.len();
    if all_units || ctx.options.early_exits {
        if let Some(atom) = complementary_atom(&units) {
            if !all_units {
                Counters::bump(&ctx.counters.shortcuts);
            }
            return within_nodes(ctx, ResolutionDag::unit_refutation(atom)).map(Partial::Refuted);
        }
        let decided = all_units
            || gamma
                .iter()
                .all(|c| c.literals().iter().any(|l| units.contains(l)));
        if decided {
            return Ok(Partial::Sat(
                units.iter().map(|l| (l.atom(), l.is_positive())).collect(),
            ));
        }
    }

    let directed = if ctx.options.early_exits {
        unit_directed(gamma, &units)
    } else {
        None
    };
    let (clause, literal) = match directed {
        Some(UnitDirected::Satisfied(clause)) => {
            // the literal branch is Γ without `clause`, and answers Γ alone
            Counters::bump(&ctx.counters.shortcuts);
            let smaller: ClauseSet = gamma.iter().filter(|c| **c != clause).cloned().collect();
            return build(ctx, &smaller, depth + 1);
        }
        Some(UnitDirected::Falsified(clause, literal)) => (clause, literal),
        None => ctx.selector.select(gamma)?,
    };
    if clause.len() < 2 || !clause.contains(literal) || !gamma.contains(&clause) {
        return Err(BuildError::BadSelection(format!(
            "({clause}, {literal}) for a set of {} clauses",
            gamma.len()
        )));
    }
    let rest = clause.without(literal);
    let rest_branch = gamma.replace(&clause, rest.clone());
    let literal_branch = gamma.replace(&clause, Clause::unit(literal));
    debug_assert!(rest_branch.complexity() < gamma.complexity());
    debug_assert!(literal_branch.complexity() < gamma.complexity());
    ctx.observer.on_split(&Split {
        depth,
        gamma,
        clause: &clause,
        literal,
        rest_branch: &rest_branch,
        literal_branch: &literal_branch,
    });

    let (first, mut second) = if ctx.options.eager {
        let (a, b) = join(
            || build(ctx, &rest_branch, depth + 1),
            || build(ctx, &literal_branch, depth + 1),
        );
        (a?, Some(b?))
    } else {
        (build(ctx, &rest_branch, depth + 1)?, None)
    };

    let refuted = match first {
        Partial::Sat(model) => return Ok(Partial::Sat(model)),
        Partial::Refuted(dag) => dag,
    };
    if uses_only(&refuted, gamma) {
        Counters::bump(&ctx.counters.shortcuts);
        return Ok(Partial::Refuted(refuted));
    }
    let leaf = refuted
        .leaf_for(&rest)
        .expect("a leaf outside the input must be the shortened clause");

    Counters::bump(&ctx.counters.percolations);
    let percolated = within_nodes(ctx, percolate(&refuted, leaf, literal)?)?;
    ctx.observer.on_percolate(depth, &refuted, &percolated);
    if percolated.is_refutation() {
        Counters::bump(&ctx.counters.shortcuts);
        return Ok(Partial::Refuted(percolated));
    }

    let second = match second.take() {
        Some(s) => s,
        None => build(ctx, &literal_branch, depth + 1)?,
    };
    let upper = match second {
        Partial::Sat(model) => return Ok(Partial::Sat(model)),
        Partial::Refuted(dag) => dag,
    };
    if uses_only(&upper, gamma) {
        Counters::bump(&ctx.counters.shortcuts);
        return Ok(Partial::Refuted(upper));
    }

    Counters::bump(&ctx.counters.grafts);
    let grafted = within_nodes(ctx, graft(&percolated, &upper)?)?;
    ctx.observer.on_graft(depth, &percolated, &upper, &grafted);
    Ok(Partial::Refuted(grafted))
}

enum UnitDirected {
    /// A wider clause containing one of the units.
    Satisfied(Clause),
    /// A wider clause and a literal in it whose complement is a unit.
    Falsified(Clause, Literal),
}

fn unit_directed(gamma: &ClauseSet, units: &HashSet<Literal>) -> Option<UnitDirected> {
    let mut falsified = None;
    for c in gamma.iter().filter(|c| c.len() >= 2) {
        for &l in c.literals() {
            if units.contains(&l) {
                return Some(UnitDirected::Satisfied(c.clone()));
            }
            if falsified.is_none() && units.contains(&!l) {
                falsified = Some((c, l));
            }
        }
    }
    falsified.map(|(c, l)| UnitDirected::Falsified(c.clone(), l))
}

/// Lowest atom occurring as both a positive and a negative unit.
fn complementary_atom(units: &HashSet<Literal>) -> Option<Atom> {
    units
        .iter()
        .filter(|l| l.is_positive() && units.contains(&!**l))
        .map(|l| l.atom())
        .min()
}

#[cfg(feature = "parallel")]
fn join<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    rayon::join(a, b)
}

#[cfg(not(feature = "parallel"))]
fn join<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA,
    B: FnOnce() -> RB,
{
    (a(), b())
}
