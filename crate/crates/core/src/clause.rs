//! Literals, clauses and clause sets.
//!
//! Clauses are kept in a canonical form: literals sorted by atom id, the
//! negative literal before the positive one within an atom, no duplicates.
//! Equality and hashing of clauses are therefore plain structural equality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use indexmap::IndexSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClauseError {
    #[error("atom ids start at 1, got {0}")]
    ZeroAtom(u64),
    #[error("atom id {0} does not fit a DIMACS literal")]
    AtomTooLarge(u64),
    #[error("pivot {pivot} must occur positively in {left} and negatively in {right}")]
    PivotNotPresent {
        pivot: Atom,
        left: Clause,
        right: Clause,
    },
}

/// A propositional letter, numbered from 1 like DIMACS variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(u32);

impl Atom {
    pub const MAX_ID: u32 = i32::MAX as u32;

    pub fn new(id: u32) -> Result<Self, ClauseError> {
        match id {
            0 => Err(ClauseError::ZeroAtom(0)),
            id if id > Self::MAX_ID => Err(ClauseError::AtomTooLarge(id as u64)),
            id => Ok(Atom(id)),
        }
    }

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn positive(self) -> Literal {
        Literal::new(self, true)
    }

    pub fn negative(self) -> Literal {
        Literal::new(self, false)
    }
}

/// Atoms 1, 2, 3 print as `P`, `Q`, `R`; everything else as `P<id>`.
impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            1 => f.write_str("P"),
            2 => f.write_str("Q"),
            3 => f.write_str("R"),
            n => write!(f, "P{n}"),
        }
    }
}

/// An atom with a polarity.
///
/// The derived order compares atoms first and puts `false` (negative) before
/// `true`, which is exactly the canonical in-clause order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    atom: Atom,
    positive: bool,
}

impl Literal {
    pub fn new(atom: Atom, positive: bool) -> Self {
        Literal { atom, positive }
    }

    pub fn atom(self) -> Atom {
        self.atom
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn complement(self) -> Self {
        Literal {
            atom: self.atom,
            positive: !self.positive,
        }
    }

    pub fn from_dimacs(value: i64) -> Result<Self, ClauseError> {
        let id = value.unsigned_abs();
        if id == 0 {
            return Err(ClauseError::ZeroAtom(0));
        }
        if id > Atom::MAX_ID as u64 {
            return Err(ClauseError::AtomTooLarge(id));
        }
        Ok(Literal::new(Atom(id as u32), value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let id = self.atom.0 as i64;
        if self.positive {
            id
        } else {
            -id
        }
    }
}

impl std::ops::Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        self.complement()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("~")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// A finite set of literals read as their disjunction. Empty means the
/// empty clause.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    lits: Vec<Literal>,
}

impl Clause {
    pub fn new<I: IntoIterator<Item = Literal>>(lits: I) -> Self {
        let mut lits: Vec<Literal> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        Clause { lits }
    }

    pub fn empty() -> Self {
        Clause { lits: Vec::new() }
    }

    pub fn unit(lit: Literal) -> Self {
        Clause { lits: vec![lit] }
    }

    pub fn from_dimacs<I: IntoIterator<Item = i64>>(values: I) -> Result<Self, ClauseError> {
        values
            .into_iter()
            .map(Literal::from_dimacs)
            .collect::<Result<Vec<_>, _>>()
            .map(Clause::new)
    }

    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    /// A clause with exactly one literal.
    pub fn is_unit(&self) -> bool {
        self.lits.len() == 1
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    /// Number of disjunction symbols: `len - 1`, and 0 for the empty clause.
    pub fn complexity(&self) -> usize {
        self.lits.len().saturating_sub(1)
    }

    pub fn is_tautology(&self) -> bool {
        self.lits
            .windows(2)
            .any(|w| w[0].atom == w[1].atom && w[0].positive != w[1].positive)
    }

    pub fn with(&self, lit: Literal) -> Clause {
        match self.lits.binary_search(&lit) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut lits = self.lits.clone();
                lits.insert(pos, lit);
                Clause { lits }
            }
        }
    }

    pub fn without(&self, lit: Literal) -> Clause {
        Clause {
            lits: self.lits.iter().copied().filter(|&l| l != lit).collect(),
        }
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.lits.iter().map(|l| l.atom)
    }

    pub fn is_subset_of(&self, other: &Clause) -> bool {
        self.lits.iter().all(|&l| other.contains(l))
    }

    pub fn to_dimacs(&self) -> Vec<i64> {
        self.lits.iter().map(|l| l.to_dimacs()).collect()
    }
}

impl FromIterator<Literal> for Clause {
    fn from_iter<I: IntoIterator<Item = Literal>>(iter: I) -> Self {
        Clause::new(iter)
    }
}

/// `{P, ~Q}`; the empty clause prints as `[]`.
impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lits.is_empty() {
            return f.write_str("[]");
        }
        f.write_str("{")?;
        for (i, lit) in self.lits.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{lit}")?;
        }
        f.write_str("}")
    }
}

/// Resolve `left` (holding the positive pivot) against `right` (holding the
/// negative pivot): `(left - {p}) ∪ (right - {~p})`.
///
/// Only the pivot occurrence on its own side is cancelled, so a tautological
/// parent can contribute the opposite pivot literal to the resolvent.
pub fn resolve(left: &Clause, right: &Clause, pivot: Atom) -> Result<Clause, ClauseError> {
    let pos = pivot.positive();
    let neg = pivot.negative();
    if !left.contains(pos) || !right.contains(neg) {
        return Err(ClauseError::PivotNotPresent {
            pivot,
            left: left.clone(),
            right: right.clone(),
        });
    }
    Ok(left
        .lits
        .iter()
        .copied()
        .filter(|&l| l != pos)
        .chain(right.lits.iter().copied().filter(|&l| l != neg))
        .collect())
}

/// An insertion-ordered set of clauses (a conjunction).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClauseSet {
    clauses: IndexSet<Clause>,
}

impl ClauseSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns false if the clause was already present.
    pub fn insert(&mut self, clause: Clause) -> bool {
        self.clauses.insert(clause)
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.clauses.contains(clause)
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Clause> + '_ {
        self.clauses.iter()
    }

    pub fn get(&self, index: usize) -> Option<&Clause> {
        self.clauses.get_index(index)
    }

    pub fn complexity(&self) -> usize {
        self.clauses.iter().map(Clause::complexity).sum()
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.clauses.iter().flat_map(Clause::atoms).collect()
    }

    pub fn var_count(&self) -> usize {
        self.atoms().len()
    }

    pub fn max_atom(&self) -> Option<Atom> {
        self.clauses.iter().flat_map(Clause::atoms).max()
    }

    pub fn contains_empty(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    /// Copy of the set with `old` replaced in place by `new`. If `new` is
    /// already a member the two collapse and the earlier position wins.
    pub fn replace(&self, old: &Clause, new: Clause) -> ClauseSet {
        let mut out = IndexSet::with_capacity(self.clauses.len());
        for c in &self.clauses {
            if c == old {
                out.insert(new.clone());
            } else {
                out.insert(c.clone());
            }
        }
        ClauseSet { clauses: out }
    }

    /// Members as a sorted vector; independent of insertion order.
    pub fn sorted(&self) -> Vec<Clause> {
        let mut v: Vec<Clause> = self.clauses.iter().cloned().collect();
        v.sort();
        v
    }

    /// Set equality ignoring insertion order.
    pub fn same_members(&self, other: &ClauseSet) -> bool {
        self.len() == other.len() && self.iter().all(|c| other.contains(c))
    }
}

impl FromIterator<Clause> for ClauseSet {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        ClauseSet {
            clauses: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a ClauseSet {
    type Item = &'a Clause;
    type IntoIter = indexmap::set::Iter<'a, Clause>;

    fn into_iter(self) -> Self::IntoIter {
        self.clauses.iter()
    }
}

/// A truth assignment keyed by atom.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    values: BTreeMap<Atom, bool>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, atom: Atom, value: bool) {
        self.values.insert(atom, value);
    }

    pub fn get(&self, atom: Atom) -> Option<bool> {
        self.values.get(&atom).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Atom, bool)> + '_ {
        self.values.iter().map(|(&a, &v)| (a, v))
    }

    /// Literals made true, ascending by atom.
    pub fn true_literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.iter().map(|(a, v)| Literal::new(a, v))
    }

    /// Adds every atom in `atoms` that has no value yet, as `false`.
    pub fn totalize<I: IntoIterator<Item = Atom>>(&mut self, atoms: I) {
        for atom in atoms {
            self.values.entry(atom).or_insert(false);
        }
    }
}

impl FromIterator<(Atom, bool)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Atom, bool)>>(iter: I) -> Self {
        Assignment {
            values: iter.into_iter().collect(),
        }
    }
}
