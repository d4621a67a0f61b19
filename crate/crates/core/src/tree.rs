//! Metric dimension of trees from leaves and exterior major vertices.
//!
//! An exterior major vertex has degree at least 3 and reaches some leaf
//! along a path whose interior vertices all have degree 2 (a *leg*). For a
//! tree that is not a path, `β(T) = leaves - exterior major vertices`, and
//! dropping one leaf per exterior major vertex from the full leaf set gives
//! a basis. Paths have dimension 1 (either endpoint).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::resolve::{is_resolving_in_graph, Method, ResolvingSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeClassification {
    /// Degree-1 vertices, ascending.
    pub leaves: Vec<usize>,
    /// Exterior major vertices, ascending.
    pub exterior_major: Vec<usize>,
    /// Leaves at the end of each exterior major vertex's legs, ascending.
    /// A leaf's leg is unique in a tree, so each leaf appears at most once.
    pub leaf_assignment: BTreeMap<usize, Vec<usize>>,
}

impl TreeClassification {
    /// True when no vertex has degree above 2.
    pub fn is_path(&self) -> bool {
        self.exterior_major.is_empty()
    }

    /// `ℓ(T) - σ(T)`, or 1 for paths with at least two vertices.
    pub fn dimension(&self) -> usize {
        if self.is_path() {
            usize::from(!self.leaves.is_empty())
        } else {
            self.leaves.len() - self.exterior_major.len()
        }
    }
}

fn check_tree(g: &Graph) -> Result<()> {
    let n = g.n();
    if n == 0 {
        return Err(Error::NotATree("no vertices".into()));
    }
    if g.has_self_loops() {
        return Err(Error::NotATree("has a self-loop".into()));
    }
    if g.edge_count() != n - 1 {
        return Err(Error::NotATree(format!(
            "{} edges on {n} vertices",
            g.edge_count()
        )));
    }
    if !g.is_unit_weight() {
        return Err(Error::NotATree("leaf formula needs unit weights".into()));
    }
    if !g.is_connected() {
        return Err(Error::NotATree("disconnected".into()));
    }
    Ok(())
}

/// Classify leaves and exterior major vertices in one pass over the legs.
pub fn classify_tree(g: &Graph) -> Result<TreeClassification> {
    check_tree(g)?;
    let leaves: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 1).collect();
    let mut leaf_assignment: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &leaf in &leaves {
        let mut prev = leaf;
        let mut cur = g.neighbors(leaf)[0].0;
        while g.degree(cur) == 2 {
            let nb = g.neighbors(cur);
            let next = if nb[0].0 == prev { nb[1].0 } else { nb[0].0 };
            prev = cur;
            cur = next;
        }
        if g.degree(cur) >= 3 {
            leaf_assignment.entry(cur).or_default().push(leaf);
        }
    }
    Ok(TreeClassification {
        leaves,
        exterior_major: leaf_assignment.keys().copied().collect(),
        leaf_assignment,
    })
}

/// Basis of a tree: all leaves minus the lowest-id leaf of each exterior
/// major vertex; for a path, its lowest-id endpoint.
pub fn tree_metric_dimension(g: &Graph) -> Result<ResolvingSet> {
    let class = classify_tree(g)?;
    let vertices: Vec<usize> = if class.is_path() {
        class.leaves.iter().take(1).copied().collect()
    } else {
        let dropped: Vec<usize> = class.leaf_assignment.values().map(|legs| legs[0]).collect();
        class
            .leaves
            .iter()
            .copied()
            .filter(|l| !dropped.contains(l))
            .collect()
    };
    let verified = is_resolving_in_graph(g, &vertices)?;
    Ok(ResolvingSet {
        vertices,
        method: Method::TreeFormula,
        verified,
    })
}
