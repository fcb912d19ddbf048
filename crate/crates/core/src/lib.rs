//! Certifying propositional resolution.
//!
//! [`builder::buildresol`] decides a clause set and returns either a model or
//! a resolution refutation built by recursive clause splitting, percolation
//! and grafting. Refutations can be re-verified with [`check::check_dag`] and
//! exported as DOT, a line-based trace, or JSON.

pub mod batch;
pub mod builder;
pub mod check;
pub mod clause;
pub mod cli;
pub mod dag;
pub mod dimacs;
pub mod export;
pub mod gen;
pub mod oracle;
pub mod rng;

pub use builder::{
    build_with, buildresol, BuildError, BuildObserver, BuildOptions, BuildStats, ResourceBudget,
    SelectionStrategy, Selector, SolveOutcome,
};
pub use check::{check_dag, CheckReport, Violation};
pub use clause::{resolve, Assignment, Atom, Clause, ClauseSet, Literal};
pub use dag::{NodeId, NodeKind, ResolutionDag};
