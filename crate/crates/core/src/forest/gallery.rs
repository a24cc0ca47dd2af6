//! Small named forests that exercise each branch of the decision procedure.
//! Each builder returns the graph and a name per vertex id.

use crate::graph::Graph;

fn build(names: &[&str], edges: &[(&str, &str)]) -> (Graph, Vec<String>) {
    let id = |s: &str| {
        names
            .iter()
            .position(|n| *n == s)
            .unwrap_or_else(|| panic!("unknown vertex {s}"))
    };
    let g = Graph::from_edges(names.len(), edges.iter().map(|&(u, v)| (id(u), id(v))))
        .expect("gallery edges are valid");
    (g, names.iter().map(|s| s.to_string()).collect())
}

/// Two adjacent centres, each carrying two legs of length two. Bob holds
/// Alice to a draw here, yet removing any leaf with its support gives Alice
/// the win.
pub fn two_spiders() -> (Graph, Vec<String>) {
    build(
        &["s1", "s2", "a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"],
        &[
            ("s1", "s2"),
            ("s1", "a1"),
            ("a1", "a2"),
            ("s1", "b1"),
            ("b1", "b2"),
            ("s2", "c1"),
            ("c1", "c2"),
            ("s2", "d1"),
            ("d1", "d2"),
        ],
    )
}

/// The path `v-1 .. v10` with a two-vertex tail `j1 j2` hung from `v4`.
/// The skeleton is the path `v1 .. v8`, but the forest is still a draw.
pub fn draw_path_tree() -> (Graph, Vec<String>) {
    let mut names: Vec<String> = (-1..=10).map(|i| format!("v{i}")).collect();
    names.push("j1".into());
    names.push("j2".into());
    let mut edges: Vec<(String, String)> = (-1..10)
        .map(|i| (format!("v{i}"), format!("v{}", i + 1)))
        .collect();
    edges.push(("v4".into(), "j1".into()));
    edges.push(("j1".into(), "j2".into()));
    let names_ref: Vec<&str> = names.iter().map(String::as_str).collect();
    let edges_ref: Vec<(&str, &str)> = edges
        .iter()
        .map(|(u, v)| (u.as_str(), v.as_str()))
        .collect();
    build(&names_ref, &edges_ref)
}

/// A connected tree whose skeleton splits in two once `v0` is removed: a
/// two-vertex path `v1 v2` and a fork centred at `f2` entered through `r`.
pub fn skeleton_forest() -> (Graph, Vec<String>) {
    let mut names: Vec<String> = [
        "v0", "l1", "v1", "v2", "a1", "a2", "b1", "b2", "r", "f1", "f2",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let mut edges: Vec<(String, String)> = [
        ("v0", "l1"),
        ("v0", "v1"),
        ("v1", "v2"),
        ("v2", "a1"),
        ("a1", "a2"),
        ("v2", "b1"),
        ("b1", "b2"),
        ("v0", "r"),
        ("r", "f1"),
        ("f1", "f2"),
    ]
    .iter()
    .map(|&(u, v)| (u.to_string(), v.to_string()))
    .collect();
    for i in 1..=3 {
        let branch = [
            format!("c1_{i}"),
            format!("c2_{i}"),
            format!("d1_{i}"),
            format!("d2_{i}"),
        ];
        edges.push(("f2".into(), branch[0].clone()));
        for w in branch.windows(2) {
            edges.push((w[0].clone(), w[1].clone()));
        }
        names.extend(branch);
    }
    let names_ref: Vec<&str> = names.iter().map(String::as_str).collect();
    let edges_ref: Vec<(&str, &str)> = edges
        .iter()
        .map(|(u, v)| (u.as_str(), v.as_str()))
        .collect();
    build(&names_ref, &edges_ref)
}

/// Rooted example for the 0/1 labelling, root `r`.
pub fn labelling_tree() -> (Graph, Vec<String>) {
    build(
        &[
            "r", "a1", "a2", "a3", "a11", "a12", "b1", "c1", "d1", "d2", "a21", "a22", "a23",
        ],
        &[
            ("r", "a1"),
            ("r", "a2"),
            ("r", "a3"),
            ("a1", "a11"),
            ("a1", "a12"),
            ("a11", "b1"),
            ("b1", "c1"),
            ("c1", "d1"),
            ("c1", "d2"),
            ("a2", "a21"),
            ("a2", "a22"),
            ("a2", "a23"),
        ],
    )
}

/// Look a vertex up by name.
pub fn vertex(names: &[String], name: &str) -> usize {
    names
        .iter()
        .position(|n| n == name)
        .unwrap_or_else(|| panic!("unknown vertex {name}"))
}
