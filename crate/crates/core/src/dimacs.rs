//! DIMACS CNF reading and writing.

use std::fmt::Write as _;

use thiserror::Error;

use crate::clause::{Clause, ClauseSet, Literal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
}

fn malformed(line: usize, msg: impl Into<String>) -> DimacsError {
    DimacsError::Malformed {
        line,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedCnf {
    pub clauses: ClauseSet,
    /// `(vars, clauses)` from the `p cnf` line, if present.
    pub header: Option<(usize, usize)>,
    pub warnings: Vec<String>,
}

/// Parses DIMACS CNF. Clauses may span lines; a clause is closed by `0`.
/// Header counts are only checked for consistency and reported as warnings.
pub fn parse_dimacs(text: &str) -> Result<ParsedCnf, DimacsError> {
    let mut clauses = ClauseSet::new();
    let mut header = None;
    let mut warnings = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut open_since = None;
    let mut read = 0usize;

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            // end marker used by some benchmark archives
            break;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(malformed(line_no, "duplicate problem line"));
            }
            let fields: Vec<&str> = rest.split_whitespace().collect();
            match fields.as_slice() {
                ["cnf", vars, count] => {
                    let vars = vars
                        .parse()
                        .map_err(|_| malformed(line_no, format!("bad variable count {vars:?}")))?;
                    let count = count
                        .parse()
                        .map_err(|_| malformed(line_no, format!("bad clause count {count:?}")))?;
                    header = Some((vars, count));
                }
                _ => return Err(malformed(line_no, "expected `p cnf <vars> <clauses>`")),
            }
            continue;
        }
        for token in line.split_whitespace() {
            let value: i64 = token
                .parse()
                .map_err(|_| malformed(line_no, format!("not an integer: {token:?}")))?;
            if value == 0 {
                clauses.insert(Clause::new(current.drain(..)));
                read += 1;
                open_since = None;
            } else {
                let lit =
                    Literal::from_dimacs(value).map_err(|e| malformed(line_no, e.to_string()))?;
                current.push(lit);
                open_since.get_or_insert(line_no);
            }
        }
    }
    if let Some(line) = open_since {
        return Err(malformed(line, "clause not terminated by 0"));
    }

    if let Some((vars, count)) = header {
        if read != count {
            warnings.push(format!("header declares {count} clauses, found {read}"));
        }
        if let Some(max) = clauses.max_atom() {
            if max.id() as usize > vars {
                warnings.push(format!("header declares {vars} variables, atom {} used", max.id()));
            }
        }
    }
    Ok(ParsedCnf {
        clauses,
        header,
        warnings,
    })
}

/// Writes `p cnf <max atom> <clauses>` and one clause per line, in set order.
pub fn format_dimacs(gamma: &ClauseSet) -> String {
    let vars = gamma.max_atom().map_or(0, |a| a.id());
    let mut out = format!("p cnf {vars} {}\n", gamma.len());
    for clause in gamma {
        for lit in clause.literals() {
            write!(out, "{} ", lit.to_dimacs()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}
