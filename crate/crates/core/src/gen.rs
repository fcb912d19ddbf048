//! Deterministic CNF instance families.

use thiserror::Error;

use crate::clause::{Atom, Clause, ClauseSet, Literal};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("pigeonhole needs at least one hole")]
    NoHoles,
    #[error("clause width {k} exceeds the {atoms} available atoms")]
    WidthTooLarge { k: usize, atoms: usize },
    #[error("instance too large: {0}")]
    TooLarge(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenSpec {
    Pigeonhole {
        holes: usize,
    },
    RandomKSat {
        atoms: usize,
        clauses: usize,
        k: usize,
        seed: u64,
    },
}

impl GenSpec {
    pub fn generate(&self) -> Result<ClauseSet, GenError> {
        match *self {
            GenSpec::Pigeonhole { holes } => pigeonhole(holes),
            GenSpec::RandomKSat {
                atoms,
                clauses,
                k,
                seed,
            } => random_ksat(atoms, clauses, k, seed),
        }
    }
}

fn atom(id: usize) -> Result<Atom, GenError> {
    u32::try_from(id)
        .ok()
        .and_then(|id| Atom::new(id).ok())
        .ok_or_else(|| GenError::TooLarge(format!("atom {id}")))
}

/// `holes + 1` pigeons into `holes` holes. Pigeon `i` in hole `j` is atom
/// `(i - 1) * holes + j`.
pub fn pigeonhole(holes: usize) -> Result<ClauseSet, GenError> {
    if holes == 0 {
        return Err(GenError::NoHoles);
    }
    let pigeons = holes + 1;
    let var = |i: usize, j: usize| atom((i - 1) * holes + j);
    let mut out = ClauseSet::new();
    for i in 1..=pigeons {
        let clause = (1..=holes)
            .map(|j| var(i, j).map(Atom::positive))
            .collect::<Result<Clause, _>>()?;
        out.insert(clause);
    }
    for j in 1..=holes {
        for i in 1..=pigeons {
            for i2 in i + 1..=pigeons {
                out.insert(Clause::new([var(i, j)?.negative(), var(i2, j)?.negative()]));
            }
        }
    }
    Ok(out)
}

/// `clauses` clauses of exactly `k` distinct atoms over `1..=atoms`.
///
/// Per clause: a partial Fisher-Yates shuffle of `[1..=atoms]` draws the
/// atoms (`swap(t, t + below(atoms - t))` for `t` in `0..k`), then one
/// `coin()` per drawn atom, in draw order, picks its polarity. One
/// [`SplitMix64`] stream seeded with `seed` serves the whole instance.
pub fn random_ksat(atoms: usize, clauses: usize, k: usize, seed: u64) -> Result<ClauseSet, GenError> {
    if k > atoms {
        return Err(GenError::WidthTooLarge { k, atoms });
    }
    let pool: Vec<Atom> = (1..=atoms).map(atom).collect::<Result<_, _>>()?;
    let mut rng = SplitMix64::new(seed);
    let mut out = ClauseSet::new();
    for _ in 0..clauses {
        let mut pool = pool.clone();
        for t in 0..k {
            let pick = t + rng.below((atoms - t) as u64) as usize;
            pool.swap(t, pick);
        }
        let lits: Vec<Literal> = pool[..k]
            .iter()
            .map(|&a| Literal::new(a, rng.coin()))
            .collect();
        out.insert(Clause::new(lits));
    }
    Ok(out)
}
