//! The two matching primitives the forest algorithm relies on. Both are exact
//! on forests only and reject any other input.

use super::{Graph, GraphError, Vertex};

/// Greedy leaf matching: repeatedly match a leaf with its unique neighbour and
/// delete both. A forest has a perfect matching iff this never strands an
/// isolated vertex.
pub fn forest_has_perfect_matching(g: &Graph) -> Result<bool, GraphError> {
    if !g.is_forest() {
        return Err(GraphError::NotAForest);
    }
    let n = g.vertex_count();
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut stack: Vec<Vertex> = g.vertices().filter(|&v| degree[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        if degree[v] == 0 {
            return Ok(false);
        }
        let u = g
            .neighbors(v)
            .iter()
            .copied()
            .find(|&u| alive[u])
            .expect("a leaf has one live neighbour");
        alive[v] = false;
        alive[u] = false;
        for &w in g.neighbors(u) {
            if alive[w] {
                degree[w] -= 1;
                if degree[w] <= 1 {
                    stack.push(w);
                }
            }
        }
    }
    // Every nonempty forest has a vertex of degree at most one, so nothing
    // can remain alive once the stack drains.
    debug_assert!(alive.iter().all(|&a| !a));
    Ok(true)
}

/// Is there a matching of `g \ {excluded}` covering every vertex of
/// `required`? Two-state subtree DP per component, each rooted at its lowest
/// id: `free` means the subtree is satisfiable with the root left unmatched,
/// `matched` means it is satisfiable with the root matched to a child.
pub fn forest_matching_covering(
    g: &Graph,
    excluded: Vertex,
    required: &[Vertex],
) -> Result<bool, GraphError> {
    if !g.is_forest() {
        return Err(GraphError::NotAForest);
    }
    let n = g.vertex_count();
    if excluded >= n {
        return Err(GraphError::VertexOutOfRange {
            vertex: excluded,
            vertex_count: n,
        });
    }
    let mut needed = vec![false; n];
    for &r in required {
        if r >= n {
            return Err(GraphError::VertexOutOfRange {
                vertex: r,
                vertex_count: n,
            });
        }
        if r == excluded || g.has_edge(r, excluded) {
            return Err(GraphError::RequiredNearExcluded(r));
        }
        needed[r] = true;
    }

    let mut visited = vec![false; n];
    visited[excluded] = true;
    let mut parent = vec![usize::MAX; n];
    let mut free = vec![false; n];
    let mut matched = vec![false; n];
    let mut order = Vec::with_capacity(n);

    for root in 0..n {
        if visited[root] {
            continue;
        }
        order.clear();
        visited[root] = true;
        order.push(root);
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for &w in g.neighbors(v) {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = v;
                    order.push(w);
                }
            }
        }
        for &v in order.iter().rev() {
            let mut all_done = true;
            let mut undone: Option<Vertex> = None;
            let mut unsettled = 0usize;
            let mut free_child = false;
            for &c in g.neighbors(v) {
                if c == excluded || parent[c] != v {
                    continue;
                }
                if !(matched[c] || (free[c] && !needed[c])) {
                    all_done = false;
                    unsettled += 1;
                    undone = Some(c);
                }
                free_child |= free[c];
            }
            free[v] = all_done;
            // Match v to one child that is satisfiable free; every other
            // child must already be settled on its own.
            matched[v] = match (all_done, undone) {
                (true, _) => free_child,
                (false, Some(c)) => unsettled == 1 && free[c],
                (false, None) => false,
            };
        }
        if !(matched[root] || (free[root] && !needed[root])) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_matchings(g: &Graph, excluded: Option<Vertex>) -> Vec<Vec<bool>> {
        let edges: Vec<(Vertex, Vertex)> = g
            .edges()
            .filter(|&(u, v)| Some(u) != excluded && Some(v) != excluded)
            .collect();
        let mut covers = Vec::new();
        for mask in 0u32..(1 << edges.len()) {
            let mut covered = vec![false; g.vertex_count()];
            let mut ok = true;
            for (i, &(u, v)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if covered[u] || covered[v] {
                        ok = false;
                        break;
                    }
                    covered[u] = true;
                    covered[v] = true;
                }
            }
            if ok {
                covers.push(covered);
            }
        }
        covers
    }

    fn tree_from_parents(parents: &[usize]) -> Graph {
        // parents[i] < i + 1 gives vertex i + 1 a parent among earlier ids
        let edges = parents.iter().enumerate().map(|(i, &p)| (p, i + 1));
        Graph::from_edges(parents.len() + 1, edges).unwrap()
    }

    fn arb_forest(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n)
            .prop_flat_map(|n| {
                (
                    Just(n),
                    proptest::collection::vec((any::<prop::sample::Index>(), any::<bool>()), n - 1),
                )
            })
            .prop_map(|(n, picks)| {
                let edges = picks
                    .iter()
                    .enumerate()
                    .filter(|(_, (_, keep))| *keep)
                    .map(|(i, (idx, _))| (idx.index(i + 1), i + 1));
                Graph::from_edges(n, edges).unwrap()
            })
    }

    #[test]
    fn perfect_matching_examples() {
        assert!(forest_has_perfect_matching(&Graph::path(4)).unwrap());
        assert!(!forest_has_perfect_matching(&Graph::path(3)).unwrap());
        assert!(!forest_has_perfect_matching(&Graph::star(3)).unwrap());
        assert!(forest_has_perfect_matching(&Graph::empty(0)).unwrap());
        assert_eq!(
            forest_has_perfect_matching(&Graph::cycle(4)),
            Err(GraphError::NotAForest)
        );
    }

    #[test]
    fn covering_examples() {
        assert!(forest_matching_covering(&Graph::star(3), 0, &[]).unwrap());
        // a-b-c-d-e with a excluded: d-e and b-c cover {c, d, e}
        assert!(forest_matching_covering(&Graph::path(5), 0, &[2, 3, 4]).unwrap());
        assert_eq!(
            forest_matching_covering(&Graph::path(3), 1, &[0]),
            Err(GraphError::RequiredNearExcluded(0))
        );
        // b-c-d-e-f after excluding a: c..f coverable by c-d, e-f
        assert!(forest_matching_covering(&Graph::path(6), 0, &[2, 3, 4, 5]).unwrap());
        // b-c-d after excluding a: c and d both required, b free
        assert!(forest_matching_covering(&Graph::path(4), 0, &[2, 3]).unwrap());
        // leaves of K_{1,3} cannot all be covered once the centre is gone
        let spider = Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(!forest_matching_covering(&spider, 0, &[2, 3, 4]).unwrap());
    }

    #[test]
    fn covering_matches_brute_force_on_small_trees() {
        // every labelled tree given by a parent array on up to 7 vertices
        for n in 1..=7usize {
            let mut parents = vec![0usize; n - 1];
            loop {
                let g = tree_from_parents(&parents);
                let all = brute_matchings(&g, None);
                for excluded in 0..n {
                    let free: Vec<Vertex> = (0..n)
                        .filter(|&v| v != excluded && !g.has_edge(v, excluded))
                        .collect();
                    let restricted = brute_matchings(&g, Some(excluded));
                    for mask in 0u32..(1 << free.len()) {
                        let required: Vec<Vertex> = free
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> i & 1 == 1)
                            .map(|(_, &v)| v)
                            .collect();
                        let expected = restricted
                            .iter()
                            .any(|cov| required.iter().all(|&r| cov[r]));
                        assert_eq!(
                            forest_matching_covering(&g, excluded, &required).unwrap(),
                            expected,
                            "tree {:?} excluded {excluded} required {required:?}",
                            g.edges().collect::<Vec<_>>()
                        );
                    }
                }
                let expected_pm = all.iter().any(|cov| cov.iter().all(|&c| c));
                assert_eq!(forest_has_perfect_matching(&g).unwrap(), expected_pm);
                // next parent array (parents[i] ranges over 0..=i)
                let mut i = 0;
                loop {
                    if i == parents.len() {
                        break;
                    }
                    parents[i] += 1;
                    if parents[i] <= i {
                        break;
                    }
                    parents[i] = 0;
                    i += 1;
                }
                if i == parents.len() {
                    break;
                }
            }
        }
    }

    proptest! {
        #[test]
        fn perfect_matching_agrees_with_enumeration(g in arb_forest(10)) {
            let expected = brute_matchings(&g, None).iter().any(|cov| cov.iter().all(|&c| c));
            prop_assert_eq!(forest_has_perfect_matching(&g).unwrap(), expected);
        }

        #[test]
        fn components_partition_vertices(g in arb_forest(12)) {
            let comps = g.connected_components();
            let mut seen: Vec<Vertex> = comps.concat();
            seen.sort_unstable();
            prop_assert_eq!(seen, g.vertices().collect::<Vec<_>>());
        }
    }
}
