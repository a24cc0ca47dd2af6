use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ForestError;
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cherry {
    pub center: Vertex,
    pub leaves: [Vertex; 2],
}

/// One cherry per vertex with at least two leaf neighbours, by centre id.
pub fn find_cherries(f: &Graph) -> Result<Vec<Cherry>, ForestError> {
    if !f.is_forest() {
        return Err(ForestError::NotAForest);
    }
    let mut out = Vec::new();
    for c in f.vertices() {
        let leaves: Vec<Vertex> = f
            .neighbors(c)
            .iter()
            .copied()
            .filter(|&l| f.degree(l) == 1)
            .take(2)
            .collect();
        if leaves.len() == 2 {
            out.push(Cherry {
                center: c,
                leaves: [leaves[0], leaves[1]],
            });
        }
    }
    Ok(out)
}

/// Leaves, their supports, and everything else (the skeleton).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonDecomposition {
    pub leaves: Vec<Vertex>,
    pub supports: Vec<Vertex>,
    pub skeleton: Vec<Vertex>,
    /// support -> its unique leaf
    pub leaf_of: BTreeMap<Vertex, Vertex>,
    /// connected components of the subgraph induced by the skeleton
    pub components: Vec<Vec<Vertex>>,
}

impl SkeletonDecomposition {
    /// Skeleton component index per vertex (`None` off the skeleton).
    pub(crate) fn component_index(&self, n: usize) -> Vec<Option<usize>> {
        let mut idx = vec![None; n];
        for (i, comp) in self.components.iter().enumerate() {
            for &v in comp {
                idx[v] = Some(i);
            }
        }
        idx
    }

    pub fn is_support(&self, v: Vertex) -> bool {
        self.leaf_of.contains_key(&v)
    }
}

pub fn skeleton(f: &Graph) -> Result<SkeletonDecomposition, ForestError> {
    if !f.is_forest() {
        return Err(ForestError::NotAForest);
    }
    let (comp, count) = f.component_ids();
    let mut sizes = vec![0usize; count];
    for &c in &comp {
        sizes[c] += 1;
    }
    if let Some(v) = f.vertices().find(|&v| sizes[comp[v]] < 3) {
        return Err(ForestError::SmallComponent(v));
    }
    if let Some(c) = find_cherries(f)?.first() {
        return Err(ForestError::HasCherry(c.center));
    }
    let leaves: Vec<Vertex> = f.vertices().filter(|&v| f.degree(v) == 1).collect();
    let leaf_of: BTreeMap<Vertex, Vertex> =
        leaves.iter().map(|&l| (f.neighbors(l)[0], l)).collect();
    let supports: Vec<Vertex> = leaf_of.keys().copied().collect();
    let skeleton: Vec<Vertex> = f
        .vertices()
        .filter(|&v| f.degree(v) > 1 && !leaf_of.contains_key(&v))
        .collect();
    let (sub, map) = f.induced_subgraph(&skeleton);
    let components = sub
        .connected_components()
        .into_iter()
        .map(|c| c.into_iter().map(|v| map[v]).collect())
        .collect();
    Ok(SkeletonDecomposition {
        leaves,
        supports,
        skeleton,
        leaf_of,
        components,
    })
}
