#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use resproof::builder::{SelectError, Split};
use resproof::clause::{resolve, Atom, Clause, ClauseSet, Literal};
use resproof::dag::{NodeKind, ResolutionDag};
use resproof::gen::random_ksat;
use resproof::rng::SplitMix64;
use resproof::{BuildObserver, SelectionStrategy, Selector};

pub fn cl(vs: &[i64]) -> Clause {
    Clause::from_dimacs(vs.iter().copied()).unwrap()
}

pub fn lit(v: i64) -> Literal {
    Literal::from_dimacs(v).unwrap()
}

pub fn set(cs: &[&[i64]]) -> ClauseSet {
    cs.iter().map(|c| cl(c)).collect()
}

/// {P,Q}, {P,~Q}, {~P,Q}, {~P,~Q}.
pub fn four_clauses() -> ClauseSet {
    set(&[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]])
}

/// Sorted per-node signatures; equal for DAGs that differ only in node
/// numbering. Exponential in depth, so only for small DAGs.
pub fn shape(dag: &ResolutionDag) -> Vec<String> {
    let mut sig: Vec<String> = Vec::with_capacity(dag.len());
    for node in dag.nodes() {
        let s = match node.kind {
            NodeKind::Leaf => format!("leaf {}", node.clause),
            NodeKind::Resolvent { left, right, pivot } => format!(
                "({} <{pivot}> {}) => {}",
                sig[left.index()],
                sig[right.index()],
                node.clause
            ),
        };
        sig.push(s);
    }
    sig.sort();
    sig
}

pub fn labels(dag: &ResolutionDag) -> Vec<Clause> {
    let mut v: Vec<Clause> = dag.nodes().iter().map(|n| n.clause.clone()).collect();
    v.sort();
    v
}

/// (clause set, chosen clause, chosen literal), all in DIMACS numbering.
pub type ScriptEntry<'a> = (&'a [&'a [i64]], &'a [i64], i64);

/// Fixed choices per clause set (compared as sets); anything else falls
/// back to first-fit.
pub struct Scripted {
    choices: HashMap<Vec<Clause>, (Clause, Literal)>,
}

impl Scripted {
    pub fn new(entries: &[ScriptEntry<'_>]) -> Self {
        let choices = entries
            .iter()
            .map(|(gamma, clause, l)| (set(gamma).sorted(), (cl(clause), lit(*l))))
            .collect();
        Scripted { choices }
    }
}

impl Selector for Scripted {
    fn select(&self, gamma: &ClauseSet) -> Result<(Clause, Literal), SelectError> {
        match self.choices.get(&gamma.sorted()) {
            Some(choice) => Ok(choice.clone()),
            None => SelectionStrategy::FirstFit.select(gamma),
        }
    }
}

/// Selection script for the four-clause set: split {~P,~Q} on ~P at the
/// top, then steer each branch to a five-node refutation.
pub fn worked_example_script() -> Scripted {
    Scripted::new(&[
        (&[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]], &[-1, -2], -1),
        // first branch, Δ ∪ {~Q}
        (&[&[1, 2], &[1, -2], &[-1, 2], &[-2]], &[1, 2], 2),
        (&[&[1], &[1, -2], &[-1, 2], &[-2]], &[-1, 2], 2),
        (&[&[1], &[1, -2], &[-1], &[-2]], &[1, -2], 1),
        (&[&[1], &[1, -2], &[-2], &[2]], &[1, -2], 1),
        // second branch, Δ ∪ {~P}
        (&[&[1, 2], &[1, -2], &[-1, 2], &[-1]], &[1, -2], 1),
        (&[&[1, 2], &[-2], &[-1, 2], &[-1]], &[1, 2], 1),
        (&[&[2], &[-2], &[-1, 2], &[-1]], &[-1, 2], -1),
    ])
}

/// Random 3-CNF corpus: atoms cycle through 4..=10, clause/atom ratio
/// sweeps 2..=8 in 25 steps, seed = index.
pub fn random_corpus(size: usize) -> Vec<ClauseSet> {
    (0..size)
        .map(|i| {
            let atoms = 4 + i % 7;
            let ratio = 2.0 + 6.0 * ((i / 7) % 25) as f64 / 24.0;
            let clauses = (ratio * atoms as f64).round() as usize;
            random_ksat(atoms, clauses, 3, i as u64).unwrap()
        })
        .collect()
}

/// Counts splits whose branches fail to lower the clause-set complexity.
#[derive(Default)]
pub struct MeasureCheck {
    pub splits: AtomicUsize,
    pub violations: AtomicUsize,
}

impl BuildObserver for MeasureCheck {
    fn on_split(&self, split: &Split<'_>) {
        self.splits.fetch_add(1, Ordering::Relaxed);
        let c = split.gamma.complexity();
        if split.rest_branch.complexity() >= c || split.literal_branch.complexity() >= c {
            self.violations.fetch_add(1, Ordering::Relaxed);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    LiteralFlip,
    PivotChange,
    ParentSwap,
    LabelEdit,
}

impl Mutation {
    pub const ALL: [Mutation; 4] = [
        Mutation::LiteralFlip,
        Mutation::PivotChange,
        Mutation::ParentSwap,
        Mutation::LabelEdit,
    ];
}

/// One corrupting edit of `dag`, or `None` when the proof offers no spot
/// where this kind of edit changes what the proof claims. Edits that happen
/// to produce another valid derivation are skipped.
pub fn mutate(
    dag: &ResolutionDag,
    gamma: &ClauseSet,
    kind: Mutation,
    rng: &mut SplitMix64,
) -> Option<ResolutionDag> {
    let mut nodes = dag.nodes().to_vec();
    let n = nodes.len() as u64;
    let fresh = Atom::new(gamma.max_atom().map_or(1, |a| a.id() + 1)).unwrap();
    for _ in 0..4 * nodes.len() {
        let i = rng.below(n) as usize;
        let node = &nodes[i];
        let changed = match (kind, node.kind) {
            (Mutation::LiteralFlip, kind) if !node.clause.is_empty() => {
                let mut lits = node.clause.literals().to_vec();
                let j = rng.below(lits.len() as u64) as usize;
                lits[j] = !lits[j];
                let label = Clause::new(lits);
                if kind == NodeKind::Leaf && gamma.contains(&label) {
                    continue;
                }
                Some((label, kind))
            }
            (Mutation::PivotChange, NodeKind::Resolvent { left, right, pivot }) => {
                let mut atoms: Vec<Atom> = nodes[left.index()].clause.atoms().collect();
                atoms.extend(nodes[right.index()].clause.atoms());
                atoms.push(fresh);
                atoms.retain(|&a| a != pivot);
                let p = atoms[rng.below(atoms.len() as u64) as usize];
                if resolve(&nodes[left.index()].clause, &nodes[right.index()].clause, p).as_ref()
                    == Ok(&node.clause)
                {
                    continue;
                }
                Some((node.clause.clone(), NodeKind::Resolvent { left, right, pivot: p }))
            }
            (Mutation::ParentSwap, NodeKind::Resolvent { left, right, pivot }) => {
                if resolve(&nodes[right.index()].clause, &nodes[left.index()].clause, pivot).as_ref()
                    == Ok(&node.clause)
                {
                    continue;
                }
                Some((node.clause.clone(), NodeKind::Resolvent { left: right, right: left, pivot }))
            }
            (Mutation::LabelEdit, kind) => Some((node.clause.with(fresh.positive()), kind)),
            _ => None,
        };
        if let Some((clause, kind)) = changed {
            nodes[i].clause = clause;
            nodes[i].kind = kind;
            return Some(ResolutionDag::from_nodes_unchecked(nodes));
        }
    }
    None
}
