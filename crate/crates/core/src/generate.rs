//! Deterministic generators for test corpora: every labelled tree of a given
//! size, seeded uniform random trees and forests, and random positions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex};
use crate::position::{Claim, Player, Position};

/// Tree on `code.len() + 2` vertices encoded by a Prüfer sequence.
pub fn prufer_decode(code: &[Vertex]) -> Graph {
    let n = code.len() + 2;
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &c in code {
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 && c < ptr {
            leaf = c;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Graph::from_edges(n, edges).expect("a Prüfer code decodes to a tree")
}

/// Every labelled tree on `n` vertices, `n^(n-2)` of them for `n >= 2`.
pub fn all_labeled_trees(n: usize) -> impl Iterator<Item = Graph> {
    let len = n.saturating_sub(2);
    let total = if n <= 2 { 1 } else { n.pow(len as u32) };
    (0..total).map(move |mut idx| {
        if n <= 2 {
            return Graph::path(n);
        }
        let mut code = vec![0; len];
        for slot in code.iter_mut() {
            *slot = idx % n;
            idx /= n;
        }
        prufer_decode(&code)
    })
}

pub fn random_tree_with<R: Rng>(n: usize, rng: &mut R) -> Graph {
    if n <= 2 {
        return Graph::path(n);
    }
    let code: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(&code)
}

/// Uniform random labelled tree, determined by `(n, seed)`.
pub fn generate_random_tree(n: usize, seed: u64) -> Graph {
    random_tree_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Disjoint union of uniform random trees with the given sizes, vertex ids
/// shuffled.
pub fn random_forest_with<R: Rng>(sizes: &[usize], rng: &mut R) -> Graph {
    let total: usize = sizes.iter().sum();
    let mut relabel: Vec<Vertex> = (0..total).collect();
    let mut edges = Vec::new();
    let mut offset = 0;
    for &size in sizes {
        let tree = random_tree_with(size, rng);
        edges.extend(tree.edges().map(|(u, v)| (u + offset, v + offset)));
        offset += size;
    }
    relabel.shuffle(rng);
    Graph::from_edges(
        total,
        edges.into_iter().map(|(u, v)| (relabel[u], relabel[v])),
    )
    .expect("disjoint trees form a forest")
}

/// Random forest with `components` trees and `n` vertices in total, each
/// tree getting at least one vertex.
pub fn generate_random_forest(n: usize, components: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_forest_with(&random_sizes(n, components, &mut rng), &mut rng)
}

pub fn random_sizes<R: Rng>(n: usize, components: usize, rng: &mut R) -> Vec<usize> {
    assert!(
        components >= 1 && components <= n,
        "need 1 <= components <= n"
    );
    let mut sizes = vec![1; components];
    for _ in components..n {
        let i = rng.gen_range(0..components);
        sizes[i] += 1;
    }
    sizes
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_graph_with<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let edges: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, edges).expect("distinct pairs form a simple graph")
}

/// Random claims on `graph` with about `claimed` of the vertices taken, each
/// by either player, such that neither player dominates yet. Gives up with
/// `None` after a bounded number of attempts.
pub fn random_open_position<R: Rng>(graph: &Graph, claimed: f64, rng: &mut R) -> Option<Position> {
    for _ in 0..64 {
        let claims: Vec<Claim> = graph
            .vertices()
            .map(|_| {
                if !rng.gen_bool(claimed) {
                    Claim::Unclaimed
                } else if rng.gen_bool(0.5) {
                    Claim::Alice
                } else {
                    Claim::Bob
                }
            })
            .collect();
        let p = Position::new(graph.clone(), claims).expect("one claim per vertex");
        if !p.dominates(Player::Alice) && !p.dominates(Player::Bob) {
            return Some(p);
        }
    }
    None
}
