//! Undirected simple graphs on dense vertex ids `0..n`.
//!
//! Adjacency lists are kept sorted so that iteration order, and therefore
//! every downstream algorithm, is deterministic.

mod matching;

pub use matching::{forest_has_perfect_matching, forest_matching_covering};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} is out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: Vertex, vertex_count: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("graph is not a forest")]
    NotAForest,
    #[error("required vertex {0} lies in the closed neighbourhood of the excluded vertex")]
    RequiredNearExcluded(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphClass {
    Forest,
    SinglePath,
    SingleCycle,
    Other,
}

impl Graph {
    /// Graph on `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        vertex_count: n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph {
            adjacency,
            edge_count,
        })
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    /// Cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    /// Star `K_{1,k}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adjacency.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Subgraph induced by `keep`. Returns the subgraph and the map from new
    /// ids to old ids; new ids follow the order of `keep` after sorting.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut old_ids: Vec<Vertex> = keep.to_vec();
        old_ids.sort_unstable();
        old_ids.dedup();
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v] = i;
        }
        let mut adjacency = vec![Vec::new(); old_ids.len()];
        let mut edge_count = 0;
        for (i, &v) in old_ids.iter().enumerate() {
            for &w in &self.adjacency[v] {
                if new_id[w] != usize::MAX {
                    adjacency[i].push(new_id[w]);
                    if v < w {
                        edge_count += 1;
                    }
                }
            }
        }
        (
            Graph {
                adjacency,
                edge_count,
            },
            old_ids,
        )
    }

    /// `G \ removed`, with the new-to-old id map.
    pub fn without(&self, removed: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut gone = vec![false; self.vertex_count()];
        for &v in removed {
            gone[v] = true;
        }
        let keep: Vec<Vertex> = self.vertices().filter(|&v| !gone[v]).collect();
        self.induced_subgraph(&keep)
    }

    /// Component id per vertex, numbered in order of lowest member.
    pub fn component_ids(&self) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &self.adjacency[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let (comp, count) = self.component_ids();
        let mut sets = vec![Vec::new(); count];
        for (v, &c) in comp.iter().enumerate() {
            sets[c].push(v);
        }
        sets
    }

    pub fn is_connected(&self) -> bool {
        self.component_ids().1 <= 1
    }

    /// A simple graph is a forest iff `m = n - #components`.
    pub fn is_forest(&self) -> bool {
        let (_, count) = self.component_ids();
        self.edge_count + count == self.vertex_count()
    }

    pub fn classify(&self) -> GraphClass {
        classify_graph(self)
    }
}

pub fn classify_graph(g: &Graph) -> GraphClass {
    let n = g.vertex_count();
    if n == 0 {
        return GraphClass::Forest;
    }
    let connected = g.is_connected();
    if connected && n <= 2 {
        return GraphClass::SinglePath;
    }
    if connected {
        let leaves = g.vertices().filter(|&v| g.degree(v) == 1).count();
        let max_degree = g.vertices().map(|v| g.degree(v)).max().unwrap_or(0);
        if max_degree == 2 && leaves == 2 && g.edge_count() == n - 1 {
            return GraphClass::SinglePath;
        }
        if max_degree == 2 && leaves == 0 && g.edge_count() == n {
            return GraphClass::SingleCycle;
        }
    }
    if g.is_forest() {
        GraphClass::Forest
    } else {
        GraphClass::Other
    }
}

pub fn connected_components(g: &Graph) -> Vec<Vec<Vertex>> {
    g.connected_components()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_examples() {
        assert_eq!(classify_graph(&Graph::path(4)), GraphClass::SinglePath);
        assert_eq!(classify_graph(&Graph::cycle(5)), GraphClass::SingleCycle);
        let two_edges = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(classify_graph(&two_edges), GraphClass::Forest);
        assert_eq!(classify_graph(&Graph::path(1)), GraphClass::SinglePath);
        assert_eq!(classify_graph(&Graph::path(2)), GraphClass::SinglePath);
        assert_eq!(classify_graph(&Graph::empty(2)), GraphClass::Forest);
        assert_eq!(classify_graph(&Graph::star(3)), GraphClass::Forest);
        let triangle_tail = Graph::from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        assert_eq!(classify_graph(&triangle_tail), GraphClass::Other);
    }

    #[test]
    fn components_examples() {
        let two_edges = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            connected_components(&two_edges),
            vec![vec![0, 1], vec![2, 3]]
        );
        assert!(connected_components(&Graph::empty(0)).is_empty());
        let tree = Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(connected_components(&tree), vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn induced_subgraph_keeps_internal_edges() {
        let g = Graph::cycle(5);
        let (sub, map) = g.induced_subgraph(&[4, 0, 1]);
        assert_eq!(map, vec![0, 1, 4]);
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
    }
}
