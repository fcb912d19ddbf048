//! Brute-force truth-table satisfiability, used as ground truth in tests.
//!
//! Assignments are enumerated as binary numbers over the atoms sorted
//! ascending, the lowest atom being the most significant bit, starting from
//! all-false. The first satisfying assignment in that order is returned.

use thiserror::Error;

use crate::clause::{Assignment, Atom, ClauseSet};

pub const DEFAULT_MAX_ATOMS: usize = 24;

/// Hard ceiling regardless of the caller's limit; keeps masks in a `u64`.
const ABSOLUTE_MAX_ATOMS: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{atoms} atoms exceed the truth-table limit of {limit}")]
    TooManyAtoms { atoms: usize, limit: usize },
    #[error("assignment has no value for atom {0}")]
    PartialAssignment(Atom),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Unsat,
    Sat { witness: Assignment },
}

impl OracleVerdict {
    pub fn is_unsat(&self) -> bool {
        matches!(self, OracleVerdict::Unsat)
    }
}

/// Whether every clause of `gamma` has a literal made true by `assignment`.
pub fn evaluate(gamma: &ClauseSet, assignment: &Assignment) -> Result<bool, OracleError> {
    let mut all = true;
    for clause in gamma {
        let mut sat = false;
        for &lit in clause.literals() {
            let value = assignment
                .get(lit.atom())
                .ok_or(OracleError::PartialAssignment(lit.atom()))?;
            sat |= value == lit.is_positive();
        }
        all &= sat;
    }
    Ok(all)
}

/// Clause as bit masks over atom positions: satisfied by `x` iff
/// `x & pos != 0 || !x & neg != 0`.
struct Masks {
    atoms: Vec<Atom>,
    clauses: Vec<(u64, u64)>,
}

impl Masks {
    fn new(gamma: &ClauseSet, max_atoms: usize) -> Result<Self, OracleError> {
        let atoms: Vec<Atom> = gamma.atoms().into_iter().collect();
        let limit = max_atoms.min(ABSOLUTE_MAX_ATOMS);
        if atoms.len() > limit {
            return Err(OracleError::TooManyAtoms {
                atoms: atoms.len(),
                limit,
            });
        }
        let n = atoms.len();
        let bit = |a: Atom| -> u64 {
            let i = atoms.binary_search(&a).expect("atom collected above");
            1 << (n - 1 - i)
        };
        let clauses = gamma
            .iter()
            .map(|c| {
                c.literals().iter().fold((0, 0), |(pos, neg), l| {
                    if l.is_positive() {
                        (pos | bit(l.atom()), neg)
                    } else {
                        (pos, neg | bit(l.atom()))
                    }
                })
            })
            .collect();
        Ok(Masks { atoms, clauses })
    }

    fn count(&self) -> u64 {
        1 << self.atoms.len()
    }

    fn satisfied(&self, x: u64) -> bool {
        self.clauses
            .iter()
            .all(|&(pos, neg)| x & pos != 0 || !x & neg != 0)
    }

    fn verdict(&self, found: Option<u64>) -> OracleVerdict {
        let n = self.atoms.len();
        match found {
            None => OracleVerdict::Unsat,
            Some(x) => OracleVerdict::Sat {
                witness: self
                    .atoms
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| (a, x >> (n - 1 - i) & 1 == 1))
                    .collect(),
            },
        }
    }
}

/// Truth-table decision, single-threaded.
pub fn truth_table_sat_sequential(
    gamma: &ClauseSet,
    max_atoms: usize,
) -> Result<OracleVerdict, OracleError> {
    let masks = Masks::new(gamma, max_atoms)?;
    let found = (0..masks.count()).find(|&x| masks.satisfied(x));
    Ok(masks.verdict(found))
}

/// Truth-table decision over parallel chunks of the enumeration. Returns the
/// same witness as the sequential version.
#[cfg(feature = "parallel")]
pub fn truth_table_sat_parallel(
    gamma: &ClauseSet,
    max_atoms: usize,
) -> Result<OracleVerdict, OracleError> {
    use rayon::prelude::*;

    const CHUNK: u64 = 1 << 14;
    let masks = Masks::new(gamma, max_atoms)?;
    let total = masks.count();
    let chunks = total.div_ceil(CHUNK);
    let found = (0..chunks).into_par_iter().find_map_first(|k| {
        let start = k * CHUNK;
        (start..(start + CHUNK).min(total)).find(|&x| masks.satisfied(x))
    });
    Ok(masks.verdict(found))
}

/// Truth-table decision; parallel when the `parallel` feature is enabled.
pub fn truth_table_sat(gamma: &ClauseSet, max_atoms: usize) -> Result<OracleVerdict, OracleError> {
    #[cfg(feature = "parallel")]
    {
        truth_table_sat_parallel(gamma, max_atoms)
    }
    #[cfg(not(feature = "parallel"))]
    {
        truth_table_sat_sequential(gamma, max_atoms)
    }
}
