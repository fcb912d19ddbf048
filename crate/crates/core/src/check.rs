//! Independent re-verification of a resolution DAG.
//!
//! Every resolvent is recomputed from the stored labels of its parents, so a
//! single bad label is reported at that node and at each child whose
//! recomputation no longer matches.

use std::fmt;

use crate::clause::{resolve, Atom, Clause, ClauseSet};
use crate::dag::{NodeId, NodeKind, ResolutionDag};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A parent reference that is out of range or not strictly earlier.
    ParentOrder { node: NodeId, parent: NodeId },
    /// The pivot is not positive in the left parent and negative in the right.
    InvalidPivot { node: NodeId, pivot: Atom },
    ResolventMismatch {
        node: NodeId,
        expected: Clause,
        found: Clause,
    },
    LeafNotPremise { node: NodeId, clause: Clause },
    /// Stored id disagrees with the node's position.
    IdMismatch { node: NodeId, stored: NodeId },
}

impl Violation {
    pub fn node(&self) -> NodeId {
        match *self {
            Violation::ParentOrder { node, .. }
            | Violation::InvalidPivot { node, .. }
            | Violation::ResolventMismatch { node, .. }
            | Violation::LeafNotPremise { node, .. }
            | Violation::IdMismatch { node, .. } => node,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ParentOrder { node, parent } => {
                write!(f, "node {node}: parent {parent} does not precede it")
            }
            Violation::InvalidPivot { node, pivot } => write!(
                f,
                "node {node}: pivot {pivot} is not positive in the left parent and negative in the right"
            ),
            Violation::ResolventMismatch {
                node,
                expected,
                found,
            } => write!(f, "node {node}: resolvent is {expected}, labeled {found}"),
            Violation::LeafNotPremise { node, clause } => {
                write!(f, "node {node}: leaf {clause} is not an input clause")
            }
            Violation::IdMismatch { node, stored } => {
                write!(f, "node {node}: stored id {stored}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
    pub nodes: usize,
    pub is_refutation: bool,
}

impl CheckReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Valid and a refutation.
    pub fn is_valid_refutation(&self) -> bool {
        self.is_valid() && self.is_refutation
    }
}

/// Checks every node of `dag`. When `premises` is given, every leaf label
/// must be one of its clauses (not every clause needs to be used).
pub fn check_dag(dag: &ResolutionDag, premises: Option<&ClauseSet>) -> CheckReport {
    let mut violations = Vec::new();
    for (index, node) in dag.nodes().iter().enumerate() {
        let here = NodeId::from_index(index);
        if node.id != here {
            violations.push(Violation::IdMismatch {
                node: here,
                stored: node.id,
            });
        }
        match node.kind {
            NodeKind::Leaf => {
                if let Some(gamma) = premises {
                    if !gamma.contains(&node.clause) {
                        violations.push(Violation::LeafNotPremise {
                            node: here,
                            clause: node.clause.clone(),
                        });
                    }
                }
            }
            NodeKind::Resolvent { left, right, pivot } => {
                let mut ordered = true;
                for parent in [left, right] {
                    if parent.index() >= index {
                        ordered = false;
                        violations.push(Violation::ParentOrder { node: here, parent });
                    }
                }
                if !ordered {
                    continue;
                }
                match resolve(dag.label(left), dag.label(right), pivot) {
                    Err(_) => violations.push(Violation::InvalidPivot { node: here, pivot }),
                    Ok(expected) if expected != node.clause => {
                        violations.push(Violation::ResolventMismatch {
                            node: here,
                            expected,
                            found: node.clause.clone(),
                        })
                    }
                    Ok(_) => {}
                }
            }
        }
    }
    CheckReport {
        violations,
        nodes: dag.len(),
        is_refutation: dag.is_refutation(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clause::test_util::*;
    use crate::dag::samples::*;
    use crate::dag::DagNode;

    fn four_clauses() -> ClauseSet {
        set(&[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]])
    }

    #[test]
    fn sample_refutation_passes() {
        let report = check_dag(&four_clause_refutation(), Some(&four_clauses()));
        assert!(report.is_valid_refutation(), "{report:?}");
        assert_eq!(report.nodes, 8);
    }

    #[test]
    fn relabel_is_reported_downstream() {
        // {Q} (node 6) relabeled {P, Q}: mismatch at 6, and node 7 recomputes
        // res({P,Q}, {~P,~Q}, Q) = {P, ~P} instead of {~P}. The root still
        // resolves {P} with the stored {~P} correctly.
        let mut nodes = four_clause_refutation().into_nodes();
        assert_eq!(nodes[5].clause, cl(&[2]));
        nodes[5].clause = cl(&[1, 2]);
        let dag = ResolutionDag::from_nodes_unchecked(nodes);
        let report = check_dag(&dag, Some(&four_clauses()));
        assert_eq!(
            report.violations,
            vec![
                Violation::ResolventMismatch {
                    node: NodeId(5),
                    expected: cl(&[2]),
                    found: cl(&[1, 2]),
                },
                Violation::ResolventMismatch {
                    node: NodeId(6),
                    expected: cl(&[1, -1]),
                    found: cl(&[-1]),
                },
            ]
        );
    }

    #[test]
    fn empty_clause_premise() {
        let mut dag = ResolutionDag::new();
        dag.add_leaf(Clause::empty());
        let gamma: ClauseSet = [Clause::empty()].into_iter().collect();
        let report = check_dag(&dag, Some(&gamma));
        assert!(report.is_valid_refutation());
    }

    #[test]
    fn foreign_leaf_and_bad_pivot() {
        let report = check_dag(&four_clause_refutation(), Some(&set(&[&[1, 2], &[1, -2], &[-1, 2]])));
        assert_eq!(
            report.violations,
            vec![Violation::LeafNotPremise {
                node: NodeId(3),
                clause: cl(&[-1, -2])
            }]
        );
        // without premises, leaves are not constrained
        assert!(check_dag(&four_clause_refutation(), None).is_valid());

        let mut nodes = four_clause_refutation().into_nodes();
        nodes[4].kind = NodeKind::Resolvent {
            left: NodeId(0),
            right: NodeId(1),
            pivot: atom(1),
        };
        let report = check_dag(&ResolutionDag::from_nodes_unchecked(nodes), None);
        assert_eq!(
            report.violations,
            vec![Violation::InvalidPivot {
                node: NodeId(4),
                pivot: atom(1)
            }]
        );
    }

    #[test]
    fn forward_reference_rejected() {
        let nodes = vec![
            DagNode {
                id: NodeId(0),
                clause: Clause::empty(),
                kind: NodeKind::Resolvent {
                    left: NodeId(1),
                    right: NodeId(2),
                    pivot: atom(1),
                },
            },
            DagNode {
                id: NodeId(1),
                clause: cl(&[1]),
                kind: NodeKind::Leaf,
            },
            DagNode {
                id: NodeId(2),
                clause: cl(&[-1]),
                kind: NodeKind::Leaf,
            },
        ];
        let report = check_dag(&ResolutionDag::from_nodes_unchecked(nodes), None);
        assert_eq!(report.violations.len(), 2);
        assert!(matches!(
            report.violations[0],
            Violation::ParentOrder { .. }
        ));
    }
}
