//! Bounded paths `[X o^n Y]^U` and the union / cutset-split operations used
//! to assemble and decompose positions.
//!
//! A bounded path is the path `v_{-1}, v_0, v_1, ..., v_n, v_{n+1}, v_{n+2}`
//! whose four outer vertices are claimed (`v_0` by `X`, `v_{n+1}` by `Y`, and
//! the two outermost by the opponents of those) and whose `n` inner vertices
//! are free. For each `i` in `U` a pendant pair `v_i - x_i - y_i` is hung off
//! `v_i`, with `x_i` Bob's and `y_i` Alice's, so Bob already dominates `v_i`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::position::{Claim, Player, Position, PositionError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundedPathSpec {
    pub left: Player,
    pub n: usize,
    pub right: Player,
    pub pendants: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundedPathError {
    #[error("a bounded path needs at least one free vertex")]
    Empty,
    #[error("pendant index {0} is outside 1..={1}")]
    PendantOutOfRange(usize, usize),
    #[error("pendant index {0} sits next to a Bob boundary and is already dominated by Bob")]
    PendantOnBobBoundary(usize),
}

impl BoundedPathSpec {
    pub fn new(left: Player, n: usize, right: Player) -> Self {
        BoundedPathSpec {
            left,
            n,
            right,
            pendants: BTreeSet::new(),
        }
    }

    pub fn with_pendants<I: IntoIterator<Item = usize>>(mut self, pendants: I) -> Self {
        self.pendants.extend(pendants);
        self
    }

    pub fn validate(&self) -> Result<(), BoundedPathError> {
        if self.n == 0 {
            return Err(BoundedPathError::Empty);
        }
        for &i in &self.pendants {
            if i == 0 || i > self.n {
                return Err(BoundedPathError::PendantOutOfRange(i, self.n));
            }
            if (i == self.n && self.right == Player::Bob) || (i == 1 && self.left == Player::Bob) {
                return Err(BoundedPathError::PendantOnBobBoundary(i));
            }
        }
        Ok(())
    }

    /// Vertex count of the built position.
    pub fn vertex_count(&self) -> usize {
        self.n + 4 + 2 * self.pendants.len()
    }

    /// Id of `v_i` (for `-1 <= i <= n + 2`) in the built position.
    pub fn spine_vertex(&self, i: isize) -> Vertex {
        (i + 1) as Vertex
    }

    pub fn build(&self) -> Result<Position, BoundedPathError> {
        build_bounded_path(self)
    }

    /// Recovers the spec from a position laid out like [`build_bounded_path`]
    /// output, taking the lower-id end of the spine as `v_{-1}`.
    pub fn recognize(p: &Position) -> Option<BoundedPathSpec> {
        recognize_bounded_path(p)
    }
}

impl fmt::Display for BoundedPathSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}o^{}{}]", self.left, self.n, self.right)?;
        if !self.pendants.is_empty() {
            let list: Vec<String> = self.pendants.iter().map(|i| i.to_string()).collect();
            write!(f, "^{{{}}}", list.join(","))?;
        }
        Ok(())
    }
}

pub fn build_bounded_path(spec: &BoundedPathSpec) -> Result<Position, BoundedPathError> {
    spec.validate()?;
    let n = spec.n;
    let spine = n + 4;
    let mut edges: Vec<(Vertex, Vertex)> = (1..spine).map(|k| (k - 1, k)).collect();
    let mut claims = vec![Claim::Unclaimed; spine];
    claims[0] = spec.left.other().claim();
    claims[1] = spec.left.claim();
    claims[n + 2] = spec.right.claim();
    claims[n + 3] = spec.right.other().claim();
    for &i in &spec.pendants {
        let x = claims.len();
        let y = x + 1;
        edges.push((spec.spine_vertex(i as isize), x));
        edges.push((x, y));
        claims.push(Claim::Bob);
        claims.push(Claim::Alice);
    }
    let graph = Graph::from_edges(claims.len(), edges).expect("bounded path edges are valid");
    Ok(Position::new(graph, claims).expect("claims sized to the graph"))
}

fn recognize_bounded_path(p: &Position) -> Option<BoundedPathSpec> {
    let g = p.graph();
    let n_all = g.vertex_count();
    // pendant pairs: y (Alice, leaf) - x (Bob, degree 2) - free spine vertex
    let mut in_pendant = vec![false; n_all];
    let mut pendant_at: Vec<Option<Vertex>> = vec![None; n_all];
    for y in g.vertices() {
        if p.claim(y) != Claim::Alice || g.degree(y) != 1 {
            continue;
        }
        let x = g.neighbors(y)[0];
        if p.claim(x) != Claim::Bob || g.degree(x) != 2 {
            continue;
        }
        let v = *g.neighbors(x).iter().find(|&&w| w != y)?;
        // a boundary pair looks the same unless the spine vertex has degree 3
        if p.claim(v) != Claim::Unclaimed || g.degree(v) != 3 {
            continue;
        }
        if pendant_at[v].is_some() {
            return None;
        }
        pendant_at[v] = Some(x);
        in_pendant[x] = true;
        in_pendant[y] = true;
    }
    let spine_ids: Vec<Vertex> = g.vertices().filter(|&v| !in_pendant[v]).collect();
    let (spine, map) = g.induced_subgraph(&spine_ids);
    if spine.vertex_count() < 5 || spine.edge_count() != spine.vertex_count() - 1 {
        return None;
    }
    if spine.vertices().any(|v| spine.degree(v) > 2) || !spine.is_connected() {
        return None;
    }
    let start = spine.vertices().find(|&v| spine.degree(v) == 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = spine.neighbors(cur).iter().find(|&&w| w != prev) {
        prev = cur;
        cur = next;
        order.push(cur);
    }
    let mut order: Vec<Vertex> = order.into_iter().map(|v| map[v]).collect();
    if order[0] > order[order.len() - 1] {
        order.reverse();
    }
    let len = order.len();
    let n = len - 4;
    let owner = |v: Vertex| p.claim(v).owner();
    let left = owner(order[1])?;
    let right = owner(order[len - 2])?;
    if owner(order[0]) != Some(left.other()) || owner(order[len - 1]) != Some(right.other()) {
        return None;
    }
    let mut pendants = BTreeSet::new();
    for (i, &v) in order[2..len - 2].iter().enumerate() {
        if p.claim(v) != Claim::Unclaimed {
            return None;
        }
        if pendant_at[v].is_some() {
            pendants.insert(i + 1);
        }
    }
    // pendants hanging off the claimed ends are not part of the layout
    if order[..2]
        .iter()
        .chain(&order[len - 2..])
        .any(|&v| pendant_at[v].is_some())
    {
        return None;
    }
    let spec = BoundedPathSpec {
        left,
        n,
        right,
        pendants,
    };
    spec.validate().ok()?;
    Some(spec)
}

/// Disjoint union. Component `i` occupies ids `offsets[i]..offsets[i + 1]`.
pub fn union_positions(ps: &[Position]) -> (Position, Vec<usize>) {
    let mut offsets = Vec::with_capacity(ps.len() + 1);
    let mut edges = Vec::new();
    let mut claims = Vec::new();
    for p in ps {
        let base = claims.len();
        offsets.push(base);
        edges.extend(p.graph().edges().map(|(u, v)| (u + base, v + base)));
        claims.extend_from_slice(p.claims());
    }
    offsets.push(claims.len());
    let graph = Graph::from_edges(claims.len(), edges).expect("union of valid graphs");
    (
        Position::new(graph, claims).expect("claims sized to the graph"),
        offsets,
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutsetSplit {
    pub first: Position,
    /// New id -> id in the original position.
    pub first_map: Vec<Vertex>,
    pub second: Position,
    pub second_map: Vec<Vertex>,
}

/// Splits `p` along a fully claimed cutset `cut` that both players already
/// dominate from inside `cut`, duplicating `cut` into both halves.
pub fn split_on_cutset(
    p: &Position,
    first: &[Vertex],
    second: &[Vertex],
    cut: &[Vertex],
) -> Result<CutsetSplit, PositionError> {
    let n = p.vertex_count();
    let invalid = |msg: String| Err(PositionError::InvalidSplit(msg));
    let mut part = vec![u8::MAX; n];
    for (tag, set) in [(0u8, first), (1, second), (2, cut)] {
        for &v in set {
            if v >= n {
                return Err(PositionError::VertexOutOfRange(v));
            }
            if part[v] != u8::MAX {
                return invalid(format!("vertex {v} appears in more than one part"));
            }
            part[v] = tag;
        }
    }
    if let Some(v) = part.iter().position(|&t| t == u8::MAX) {
        return invalid(format!("vertex {v} is in no part"));
    }
    let g = p.graph();
    if let Some((u, v)) = g
        .edges()
        .find(|&(u, v)| part[u] < 2 && part[v] < 2 && part[u] != part[v])
    {
        return invalid(format!("edge {u}-{v} joins the two sides"));
    }
    for &x in cut {
        if p.claim(x) == Claim::Unclaimed {
            return invalid(format!("cutset vertex {x} is unclaimed"));
        }
        for player in [Player::Alice, Player::Bob] {
            let mine = player.claim();
            let covered = p.claim(x) == mine
                || g.neighbors(x)
                    .iter()
                    .any(|&w| part[w] == 2 && p.claim(w) == mine);
            if !covered {
                return invalid(format!(
                    "cutset vertex {x} is not dominated by {player}'s cutset vertices"
                ));
            }
        }
    }
    let keep_first: Vec<Vertex> = first.iter().chain(cut).copied().collect();
    let keep_second: Vec<Vertex> = second.iter().chain(cut).copied().collect();
    let (first, first_map) = p.induced(&keep_first);
    let (second, second_map) = p.induced(&keep_second);
    Ok(CutsetSplit {
        first,
        first_map,
        second,
        second_map,
    })
}
