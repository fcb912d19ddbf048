//! Text formats for resolution DAGs.
//!
//! Trace format, one node per line, ids 1-based in arena order:
//!
//! ```text
//! <id> <lit>... 0 0                      leaf
//! <id> <lit>... 0 <left> <right> 0       resolvent; left holds the positive pivot
//! ```
//!
//! The pivot is not written. A reader recovers it as the lowest atom that is
//! positive in the left parent, negative in the right one, and reproduces
//! the stated clause.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clause::{resolve, Atom, Clause, ClauseSet, Literal};
use crate::dag::{DagNode, NodeId, NodeKind, ResolutionDag};

pub fn to_dot(dag: &ResolutionDag) -> String {
    let mut out = String::from("digraph resolution {\n");
    for node in dag.nodes() {
        let shape = if node.is_leaf() { "box" } else { "ellipse" };
        writeln!(
            out,
            "  n{} [label=\"{}\", shape={shape}];",
            node.id, node.clause
        )
        .unwrap();
    }
    for node in dag.nodes() {
        if let Some((l, r)) = node.parents() {
            writeln!(out, "  n{l} -> n{};", node.id).unwrap();
            writeln!(out, "  n{r} -> n{};", node.id).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

pub fn to_trace(dag: &ResolutionDag) -> String {
    let mut out = String::new();
    for node in dag.nodes() {
        write!(out, "{}", node.id).unwrap();
        for lit in node.clause.literals() {
            write!(out, " {}", lit.to_dimacs()).unwrap();
        }
        match node.parents() {
            None => out.push_str(" 0 0\n"),
            Some((l, r)) => writeln!(out, " 0 {l} {r} 0").unwrap(),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
}

/// Reads the trace format back. Blank lines and lines starting with `c` or
/// `s` are skipped, so solver output can be fed in directly.
///
/// Labels and parents are taken as written; nothing is verified here beyond
/// the syntax. When no pivot reproduces the stated clause, the first atom
/// with the right orientation is recorded (or, failing that, the lowest atom
/// of the left parent) so that the checker reports the defect.
pub fn parse_trace(text: &str) -> Result<ResolutionDag, TraceError> {
    let mut nodes: Vec<DagNode> = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('s') {
            continue;
        }
        let err = |msg: String| TraceError::Malformed { line: line_no, msg };
        let values = line
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| err(format!("not an integer: {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let (&id, rest) = values
            .split_first()
            .ok_or_else(|| err("empty line".into()))?;
        if id != nodes.len() as i64 + 1 {
            return Err(err(format!("expected node id {}, found {id}", nodes.len() + 1)));
        }
        let zero = rest
            .iter()
            .position(|&v| v == 0)
            .ok_or_else(|| err("literal list not terminated by 0".into()))?;
        let clause = rest[..zero]
            .iter()
            .map(|&v| Literal::from_dimacs(v))
            .collect::<Result<Clause, _>>()
            .map_err(|e| err(e.to_string()))?;
        let node_id = NodeId::from_index(nodes.len());
        let kind = match &rest[zero + 1..] {
            [0] => NodeKind::Leaf,
            &[l, r, 0] if l > 0 && r > 0 => {
                let left = NodeId::from_index(l as usize - 1);
                let right = NodeId::from_index(r as usize - 1);
                let pivot = recover_pivot(&nodes, left, right, &clause);
                NodeKind::Resolvent { left, right, pivot }
            }
            _ => return Err(err("expected `0` or `<left> <right> 0` after the literals".into())),
        };
        nodes.push(DagNode {
            id: node_id,
            clause,
            kind,
        });
    }
    Ok(ResolutionDag::from_nodes_unchecked(nodes))
}

fn recover_pivot(nodes: &[DagNode], left: NodeId, right: NodeId, stated: &Clause) -> Atom {
    let fallback = Atom::new(1).expect("1 is a valid atom");
    let (Some(l), Some(r)) = (nodes.get(left.index()), nodes.get(right.index())) else {
        return fallback;
    };
    let candidates: Vec<Atom> = l
        .clause
        .literals()
        .iter()
        .filter(|lit| lit.is_positive() && r.clause.contains(!**lit))
        .map(|lit| lit.atom())
        .collect();
    candidates
        .iter()
        .copied()
        .find(|&p| resolve(&l.clause, &r.clause, p).as_ref() == Ok(stated))
        .or_else(|| candidates.first().copied())
        .or_else(|| l.clause.atoms().next())
        .unwrap_or(fallback)
}

/// JSON document for a refutation or partial DAG.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredProof {
    pub premises: Vec<Vec<i64>>,
    pub nodes: Vec<StructuredNode>,
    /// 1-based id of the unique sink, if there is one.
    pub root: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredNode {
    pub id: usize,
    pub literals: Vec<i64>,
    /// `"leaf"` or `"resolvent"`.
    pub kind: String,
    /// 1-based `[left, right]`; empty for leaves.
    pub parents: Vec<usize>,
    pub pivot: Option<u32>,
}

pub fn to_structured(dag: &ResolutionDag, premises: &ClauseSet) -> StructuredProof {
    StructuredProof {
        premises: premises.iter().map(Clause::to_dimacs).collect(),
        nodes: dag
            .nodes()
            .iter()
            .map(|n| {
                let (kind, parents, pivot) = match n.kind {
                    NodeKind::Leaf => ("leaf", vec![], None),
                    NodeKind::Resolvent { left, right, pivot } => (
                        "resolvent",
                        vec![left.index() + 1, right.index() + 1],
                        Some(pivot.id()),
                    ),
                };
                StructuredNode {
                    id: n.id.index() + 1,
                    literals: n.clause.to_dimacs(),
                    kind: kind.into(),
                    parents,
                    pivot,
                }
            })
            .collect(),
        root: dag.root().map(|r| r.index() + 1),
    }
}

pub fn to_structured_json(dag: &ResolutionDag, premises: &ClauseSet) -> String {
    let mut s = serde_json::to_string_pretty(&to_structured(dag, premises))
        .expect("plain data always serializes");
    s.push('\n');
    s
}
