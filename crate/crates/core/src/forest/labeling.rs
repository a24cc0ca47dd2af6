use serde::{Deserialize, Serialize};

use super::skeleton::SkeletonDecomposition;
use crate::graph::{Graph, Vertex};

/// Bottom-up 0/1 labels of the tree containing `root`: a vertex is 0 iff
/// every child is 1. The root and vertices of other components are `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroOneLabeling {
    pub root: Vertex,
    pub labels: Vec<Option<u8>>,
}

impl ZeroOneLabeling {
    pub fn label(&self, v: Vertex) -> Option<u8> {
        self.labels[v]
    }
}

/// BFS order and parents of the component of `root`.
fn rooted_order(f: &Graph, root: Vertex) -> (Vec<Vertex>, Vec<Vertex>) {
    let mut parent = vec![usize::MAX; f.vertex_count()];
    let mut order = vec![root];
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &w in f.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                order.push(w);
            }
        }
    }
    (order, parent)
}

pub fn zero_one_labeling(f: &Graph, root: Vertex) -> ZeroOneLabeling {
    let (order, parent) = rooted_order(f, root);
    let mut labels = vec![None; f.vertex_count()];
    // true while every child seen so far is labelled 1
    let mut all_ones = vec![true; f.vertex_count()];
    for &v in order.iter().rev() {
        if v == root {
            continue;
        }
        let label = if all_ones[v] { 0 } else { 1 };
        labels[v] = Some(label);
        if label == 0 {
            all_ones[parent[v]] = false;
        }
    }
    ZeroOneLabeling { root, labels }
}

/// Rooted at `root`, does no 1-labelled vertex of `checked` have two or more
/// children in `checked`? On a skeleton every 1-labelled vertex has a
/// 0-labelled skeleton child, so this means exactly one skeleton child.
pub fn ones_have_single_child(f: &Graph, root: Vertex, checked: &[bool]) -> bool {
    let lab = zero_one_labeling(f, root);
    let (_, parent) = rooted_order(f, root);
    f.vertices().all(|v| {
        if !checked[v] || lab.label(v) != Some(1) {
            return true;
        }
        let children = f
            .neighbors(v)
            .iter()
            .filter(|&&w| w != parent[v] && checked[w])
            .count();
        children <= 1
    })
}

/// For every vertex `r` of the tree containing `start`, the number of
/// vertices in `checked` that are labelled 1 and have two or more children
/// in `checked`, in the labelling rooted at `r`. Linear time by rerooting;
/// entries outside the tree are `usize::MAX`.
pub fn bad_ones_per_root(f: &Graph, start: Vertex, checked: &[bool]) -> Vec<usize> {
    let n = f.vertex_count();
    let (order, parent) = rooted_order(f, start);
    let checked_degree: Vec<usize> = f
        .vertices()
        .map(|v| f.neighbors(v).iter().filter(|&&w| checked[w]).count())
        .collect();
    // is `v`, hanging below `p`, a branching 1-vertex?
    let branching = |v: Vertex, p: Vertex, lab: u8| {
        usize::from(checked[v] && lab == 1 && checked_degree[v] - usize::from(checked[p]) >= 2)
    };

    // values of each vertex's subtree as seen from its parent
    let mut down_lab = vec![0u8; n];
    let mut down_bad = vec![0usize; n];
    let mut zero_children = vec![0usize; n];
    let mut bad_children = vec![0usize; n];
    for &v in order.iter().rev() {
        if v == start {
            continue;
        }
        let p = parent[v];
        down_lab[v] = if zero_children[v] == 0 { 0 } else { 1 };
        down_bad[v] = branching(v, p, down_lab[v]) + bad_children[v];
        if down_lab[v] == 0 {
            zero_children[p] += 1;
        }
        bad_children[p] += down_bad[v];
    }

    // the parent's side as seen from each child
    let mut up_lab = vec![0u8; n];
    let mut up_bad = vec![0usize; n];
    let mut total = vec![usize::MAX; n];
    for &p in &order {
        let mut zeros = zero_children[p];
        let mut bad = bad_children[p];
        if p != start {
            zeros += usize::from(up_lab[p] == 0);
            bad += up_bad[p];
        }
        total[p] = bad;
        for &c in f.neighbors(p) {
            if c == parent[p] && p != start {
                continue;
            }
            let zeros_without = zeros - usize::from(down_lab[c] == 0);
            up_lab[c] = if zeros_without > 0 { 1 } else { 0 };
            up_bad[c] = branching(p, c, up_lab[c]) + bad - down_bad[c];
        }
    }
    total
}

/// Supports `v0` from which Alice's opening can succeed: the skeleton plus
/// `v0` induces a tree, and rooted at `v0` every 1-labelled skeleton vertex
/// has a single skeleton child. Supports are left out of the count because
/// Bob claims them all in the forced exchanges that follow `v0`.
pub fn candidate_first_moves(f: &Graph, sk: &SkeletonDecomposition) -> Vec<Vertex> {
    let comp_of = sk.component_index(f.vertex_count());
    let connects = |m: Vertex| {
        let mut hit = vec![false; sk.components.len()];
        let mut count = 0;
        for &w in f.neighbors(m) {
            if let Some(c) = comp_of[w] {
                if hit[c] {
                    return false;
                }
                hit[c] = true;
                count += 1;
            }
        }
        count == sk.components.len()
    };
    let connecting: Vec<Vertex> = sk
        .supports
        .iter()
        .copied()
        .filter(|&m| connects(m))
        .collect();
    let Some(&first) = connecting.first() else {
        return Vec::new();
    };
    let mut in_skeleton = vec![false; f.vertex_count()];
    for &v in &sk.skeleton {
        in_skeleton[v] = true;
    }
    let bad = bad_ones_per_root(f, first, &in_skeleton);
    connecting.into_iter().filter(|&m| bad[m] == 0).collect()
}

/// Every support adjacent to a skeleton leaf, with no further filtering.
pub fn exhaustive_first_moves(f: &Graph, sk: &SkeletonDecomposition) -> Vec<Vertex> {
    let comp_of = sk.component_index(f.vertex_count());
    let skeleton_degree = |v: Vertex| {
        f.neighbors(v)
            .iter()
            .filter(|&&w| comp_of[w].is_some())
            .count()
    };
    sk.supports
        .iter()
        .copied()
        .filter(|&m| {
            f.neighbors(m)
                .iter()
                .any(|&w| comp_of[w].is_some() && skeleton_degree(w) <= 1)
        })
        .collect()
}
