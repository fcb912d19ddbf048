//! Resolution DAGs.
//!
//! Nodes live in an arena in allocation order, which is also a topological
//! order: a resolvent can only reference nodes that already exist. Leaves are
//! hash-consed, so each distinct premise clause has exactly one leaf. Interior
//! nodes are never merged.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::clause::{resolve, Atom, Clause, ClauseError, ClauseSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DagError {
    #[error("node {0} does not exist")]
    UnknownNode(NodeId),
    #[error("invalid pivot at new resolvent: {0}")]
    InvalidPivot(#[from] ClauseError),
    #[error("node {0} is not a leaf")]
    NotALeaf(NodeId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub(crate) u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(index: usize) -> Self {
        NodeId(u32::try_from(index).expect("dag arena exceeds u32 indices"))
    }
}

impl std::fmt::Display for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // exported ids are 1-based
        write!(f, "{}", self.0 + 1)
    }
}

/// How a node was obtained. For a resolvent, `left` holds the positive pivot
/// literal and `right` the negative one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf,
    Resolvent {
        left: NodeId,
        right: NodeId,
        pivot: Atom,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DagNode {
    pub id: NodeId,
    pub clause: Clause,
    pub kind: NodeKind,
}

impl DagNode {
    pub fn is_leaf(&self) -> bool {
        matches!(self.kind, NodeKind::Leaf)
    }

    pub fn parents(&self) -> Option<(NodeId, NodeId)> {
        match self.kind {
            NodeKind::Leaf => None,
            NodeKind::Resolvent { left, right, .. } => Some((left, right)),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ResolutionDag {
    nodes: Vec<DagNode>,
    leaves: HashMap<Clause, NodeId>,
    children: Vec<u32>,
}

impl PartialEq for ResolutionDag {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes
    }
}

impl Eq for ResolutionDag {}

impl ResolutionDag {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a DAG from nodes exactly as given, without validating labels,
    /// pivots, ordering or leaf uniqueness. Used for proofs read from outside
    /// and for mutation testing; run [`crate::check::check_dag`] on the result.
    ///
    /// Node ids are reassigned from positions. Parent references that point
    /// outside the arena are kept but do not count as edges.
    pub fn from_nodes_unchecked(nodes: Vec<DagNode>) -> Self {
        let mut dag = ResolutionDag {
            nodes: Vec::with_capacity(nodes.len()),
            leaves: HashMap::new(),
            children: vec![0; nodes.len()],
        };
        for (i, mut node) in nodes.into_iter().enumerate() {
            node.id = NodeId::from_index(i);
            if let NodeKind::Resolvent { left, right, .. } = node.kind {
                for p in [left, right] {
                    if let Some(c) = dag.children.get_mut(p.index()) {
                        *c += 1;
                    }
                }
            }
            if node.is_leaf() {
                dag.leaves.entry(node.clause.clone()).or_insert(node.id);
            }
            dag.nodes.push(node);
        }
        dag
    }

    pub fn into_nodes(self) -> Vec<DagNode> {
        self.nodes
    }

    /// Adds a premise leaf, or returns the existing leaf with that clause.
    pub fn add_leaf(&mut self, clause: Clause) -> NodeId {
        if let Some(&id) = self.leaves.get(&clause) {
            return id;
        }
        let id = NodeId::from_index(self.nodes.len());
        self.leaves.insert(clause.clone(), id);
        self.nodes.push(DagNode {
            id,
            clause,
            kind: NodeKind::Leaf,
        });
        self.children.push(0);
        id
    }

    pub fn add_resolvent(
        &mut self,
        left: NodeId,
        right: NodeId,
        pivot: Atom,
    ) -> Result<NodeId, DagError> {
        let l = self.node(left).ok_or(DagError::UnknownNode(left))?;
        let r = self.node(right).ok_or(DagError::UnknownNode(right))?;
        let clause = resolve(&l.clause, &r.clause, pivot)?;
        let id = NodeId::from_index(self.nodes.len());
        self.nodes.push(DagNode {
            id,
            clause,
            kind: NodeKind::Resolvent { left, right, pivot },
        });
        self.children.push(0);
        self.children[left.index()] += 1;
        self.children[right.index()] += 1;
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> Option<&DagNode> {
        self.nodes.get(id.index())
    }

    pub fn label(&self, id: NodeId) -> &Clause {
        &self.nodes[id.index()].clause
    }

    pub fn nodes(&self) -> &[DagNode] {
        &self.nodes
    }

    pub fn leaf_for(&self, clause: &Clause) -> Option<NodeId> {
        self.leaves.get(clause).copied()
    }

    pub fn leaves(&self) -> impl Iterator<Item = &DagNode> + '_ {
        self.nodes.iter().filter(|n| n.is_leaf())
    }

    /// Distinct clauses labeling leaves, in node order.
    pub fn premises(&self) -> ClauseSet {
        self.leaves().map(|n| n.clause.clone()).collect()
    }

    /// Nodes with no outgoing edge.
    pub fn sinks(&self) -> Vec<NodeId> {
        self.children
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(i, _)| NodeId::from_index(i))
            .collect()
    }

    /// The sink, if there is exactly one.
    pub fn root(&self) -> Option<NodeId> {
        let mut sinks = self
            .children
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(i, _)| NodeId::from_index(i));
        match (sinks.next(), sinks.next()) {
            (Some(root), None) => Some(root),
            _ => None,
        }
    }

    /// A single sink labeled with the empty clause.
    pub fn is_refutation(&self) -> bool {
        self.root().is_some_and(|r| self.label(r).is_empty())
    }

    /// All nodes reachable from `from` along parent-to-child edges, `from`
    /// itself excluded.
    pub fn descendants_of(&self, from: NodeId) -> BTreeSet<NodeId> {
        let mut out_edges: Vec<Vec<NodeId>> = vec![Vec::new(); self.nodes.len()];
        for node in &self.nodes {
            if let Some((l, r)) = node.parents() {
                for p in [l, r] {
                    if let Some(edges) = out_edges.get_mut(p.index()) {
                        edges.push(node.id);
                    }
                }
            }
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([from]);
        while let Some(n) = queue.pop_front() {
            for &child in out_edges.get(n.index()).into_iter().flatten() {
                if seen.insert(child) {
                    queue.push_back(child);
                }
            }
        }
        seen.remove(&from);
        seen
    }

    /// The three-node refutation `{l}, {~l} |- []`.
    pub fn unit_refutation(atom: Atom) -> Self {
        let mut dag = ResolutionDag::new();
        let p = dag.add_leaf(Clause::unit(atom.positive()));
        let n = dag.add_leaf(Clause::unit(atom.negative()));
        dag.add_resolvent(p, n, atom)
            .expect("complementary units always resolve");
        dag
    }
}
