//! Percolation and grafting of resolution DAGs.

use crate::clause::{Clause, Literal};
use crate::dag::{DagError, NodeId, NodeKind, ResolutionDag};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraftError {
    #[error("the first DAG has no unique sink")]
    NoUniqueSink,
    #[error("no leaf of the second DAG is labeled {0}")]
    NoMatchingPremise(Clause),
}

/// Adds `lit` to the leaf `leaf` and recomputes every resolvent top-down on
/// its recorded pivot.
///
/// Each node ends up labeled with its old clause or its old clause plus
/// `lit`. When the enlarged leaf coincides with another leaf the two are
/// merged, so the result can be one node shorter.
pub fn percolate(
    dag: &ResolutionDag,
    leaf: NodeId,
    lit: Literal,
) -> Result<ResolutionDag, DagError> {
    percolate_mapped(dag, leaf, lit).map(|(out, _)| out)
}

/// [`percolate`], also returning where each node of `dag` went.
pub fn percolate_mapped(
    dag: &ResolutionDag,
    leaf: NodeId,
    lit: Literal,
) -> Result<(ResolutionDag, Vec<NodeId>), DagError> {
    let target = dag.node(leaf).ok_or(DagError::UnknownNode(leaf))?;
    if !target.is_leaf() {
        return Err(DagError::NotALeaf(leaf));
    }
    let mut out = ResolutionDag::new();
    let mut map = Vec::with_capacity(dag.len());
    for node in dag.nodes() {
        let id = match node.kind {
            NodeKind::Leaf if node.id == leaf => out.add_leaf(node.clause.with(lit)),
            NodeKind::Leaf => out.add_leaf(node.clause.clone()),
            NodeKind::Resolvent { left, right, pivot } => {
                out.add_resolvent(map[left.index()], map[right.index()], pivot)?
            }
        };
        map.push(id);
    }
    Ok((out, map))
}

/// Plugs `lower` into `upper`: the leaf of `upper` labeled with the clause at
/// `lower`'s sink is replaced by that sink. Leaves common to both halves are
/// shared.
pub fn graft(lower: &ResolutionDag, upper: &ResolutionDag) -> Result<ResolutionDag, GraftError> {
    let root = lower.root().ok_or(GraftError::NoUniqueSink)?;
    let joint = lower.label(root);
    let plug = upper
        .leaf_for(joint)
        .ok_or_else(|| GraftError::NoMatchingPremise(joint.clone()))?;

    let mut out = ResolutionDag::new();
    let lower_map = copy_into(&mut out, lower, None);
    copy_into(&mut out, upper, Some((plug, lower_map[root.index()])));
    Ok(out)
}

/// Appends `src` to `dst`, optionally substituting one node id, and returns
/// the id mapping.
fn copy_into(
    dst: &mut ResolutionDag,
    src: &ResolutionDag,
    substitute: Option<(NodeId, NodeId)>,
) -> Vec<NodeId> {
    let mut map = Vec::with_capacity(src.len());
    for node in src.nodes() {
        let id = match (node.kind, substitute) {
            (_, Some((from, to))) if from == node.id => to,
            (NodeKind::Leaf, _) => dst.add_leaf(node.clause.clone()),
            (NodeKind::Resolvent { left, right, pivot }, _) => dst
                .add_resolvent(map[left.index()], map[right.index()], pivot)
                .expect("labels are copied verbatim, so every step stays valid"),
        };
        map.push(id);
    }
    map
}
