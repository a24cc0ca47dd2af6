//! Game positions: who has claimed what, whose turn it is, and the
//! domination and trap predicates the solvers are built on.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Claim {
    #[default]
    Unclaimed,
    Alice,
    Bob,
}

impl Claim {
    pub fn owner(self) -> Option<Player> {
        match self {
            Claim::Unclaimed => None,
            Claim::Alice => Some(Player::Alice),
            Claim::Bob => Some(Player::Bob),
        }
    }

    /// `-`, `A` or `B`.
    pub fn symbol(self) -> &'static str {
        match self {
            Claim::Unclaimed => "-",
            Claim::Alice => "A",
            Claim::Bob => "B",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    #[serde(rename = "A")]
    Alice,
    #[serde(rename = "B")]
    Bob,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Alice => Player::Bob,
            Player::Bob => Player::Alice,
        }
    }

    pub fn claim(self) -> Claim {
        match self {
            Player::Alice => Claim::Alice,
            Player::Bob => Claim::Bob,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Player::Alice => 'A',
            Player::Bob => 'B',
        }
    }

    pub fn from_letter(s: &str) -> Option<Player> {
        match s {
            "A" => Some(Player::Alice),
            "B" => Some(Player::Bob),
            _ => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Two-valued outcome: `A` when Alice can force a win, `D` otherwise.
/// Ordered `D < A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Outcome {
    D,
    A,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::A => "A",
            Outcome::D => "D",
        })
    }
}

/// Exact search value from Alice's point of view, ordered
/// `BobWin < Draw < AliceWin`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GameValue {
    BobWin,
    Draw,
    AliceWin,
}

impl GameValue {
    /// Bob winning is folded into `D`.
    pub fn outcome(self) -> Outcome {
        match self {
            GameValue::AliceWin => Outcome::A,
            GameValue::Draw | GameValue::BobWin => Outcome::D,
        }
    }

    pub fn is_win_for(self, player: Player) -> bool {
        matches!(
            (self, player),
            (GameValue::AliceWin, Player::Alice) | (GameValue::BobWin, Player::Bob)
        )
    }

    pub fn best_for(player: Player) -> GameValue {
        match player {
            Player::Alice => GameValue::AliceWin,
            Player::Bob => GameValue::BobWin,
        }
    }

    pub fn worst_for(player: Player) -> GameValue {
        Self::best_for(player.other())
    }
}

impl fmt::Display for GameValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GameValue::AliceWin => "AliceWin",
            GameValue::Draw => "Draw",
            GameValue::BobWin => "BobWin",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameStatus {
    Ongoing,
    AliceDominates,
    BobDominates,
    Exhausted,
}

impl GameStatus {
    pub fn is_over(self) -> bool {
        self != GameStatus::Ongoing
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TrapKind {
    /// A vertex Alice must claim herself or lose the ability to dominate.
    ATrap,
    /// The same for Bob.
    BTrap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Trap {
    pub vertex: Vertex,
    /// Lowest-id vertex that only `vertex` can still dominate for the
    /// trapped player.
    pub witness: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PositionError {
    #[error("claims vector has length {claims} but the graph has {vertices} vertices")]
    LengthMismatch { claims: usize, vertices: usize },
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(Vertex),
    #[error("vertex {0} is already claimed")]
    AlreadyClaimed(Vertex),
    #[error("both players dominate the graph simultaneously")]
    IllegalState,
    #[error("{0}")]
    InvalidSplit(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Position {
    graph: Graph,
    claims: Vec<Claim>,
}

impl Position {
    /// Every vertex unclaimed.
    pub fn fresh(graph: Graph) -> Self {
        let claims = vec![Claim::Unclaimed; graph.vertex_count()];
        Position { graph, claims }
    }

    pub fn new(graph: Graph, claims: Vec<Claim>) -> Result<Self, PositionError> {
        if claims.len() != graph.vertex_count() {
            return Err(PositionError::LengthMismatch {
                claims: claims.len(),
                vertices: graph.vertex_count(),
            });
        }
        Ok(Position { graph, claims })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn claims(&self) -> &[Claim] {
        &self.claims
    }

    pub fn claim(&self, v: Vertex) -> Claim {
        self.claims[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.claims.len()
    }

    pub fn claimed_by(&self, player: Player) -> Vec<Vertex> {
        let c = player.claim();
        (0..self.claims.len())
            .filter(|&v| self.claims[v] == c)
            .collect()
    }

    pub fn unclaimed(&self) -> Vec<Vertex> {
        (0..self.claims.len())
            .filter(|&v| self.claims[v] == Claim::Unclaimed)
            .collect()
    }

    pub fn unclaimed_count(&self) -> usize {
        self.claims
            .iter()
            .filter(|&&c| c == Claim::Unclaimed)
            .count()
    }

    /// Returns a copy with `v` claimed by `player`.
    pub fn with_claim(&self, v: Vertex, player: Player) -> Result<Position, PositionError> {
        match self.claims.get(v) {
            None => Err(PositionError::VertexOutOfRange(v)),
            Some(Claim::Unclaimed) => {
                let mut next = self.clone();
                next.claims[v] = player.claim();
                Ok(next)
            }
            Some(_) => Err(PositionError::AlreadyClaimed(v)),
        }
    }

    /// The position `P_{x,y}`: `x` to Alice and `y` to Bob.
    pub fn with_pair(&self, alice: Vertex, bob: Vertex) -> Result<Position, PositionError> {
        self.with_claim(alice, Player::Alice)?
            .with_claim(bob, Player::Bob)
    }

    /// Subposition induced by `keep`, with the new-to-old id map.
    pub fn induced(&self, keep: &[Vertex]) -> (Position, Vec<Vertex>) {
        let (graph, map) = self.graph.induced_subgraph(keep);
        let claims = map.iter().map(|&v| self.claims[v]).collect();
        (Position { graph, claims }, map)
    }

    pub fn dominates(&self, player: Player) -> bool {
        dominates(self, player)
    }
}

pub fn dominates(p: &Position, player: Player) -> bool {
    let mine = player.claim();
    p.graph
        .vertices()
        .all(|v| p.claims[v] == mine || p.graph.neighbors(v).iter().any(|&w| p.claims[w] == mine))
}

/// Unclaimed vertices that are traps of the given kind. A vertex `v` is an
/// A-trap when some `w` has `N[w]` minus Bob's vertices equal to `{v}`, and a
/// B-trap symmetrically. Sorted by vertex, each with its lowest witness.
pub fn find_traps(p: &Position, kind: TrapKind) -> Vec<Trap> {
    let blocker = match kind {
        TrapKind::ATrap => Claim::Bob,
        TrapKind::BTrap => Claim::Alice,
    };
    let g = &p.graph;
    let mut witness: Vec<Option<Vertex>> = vec![None; g.vertex_count()];
    for w in g.vertices() {
        let mut open = std::iter::once(w)
            .chain(g.neighbors(w).iter().copied())
            .filter(|&x| p.claims[x] != blocker);
        if let (Some(v), None) = (open.next(), open.next()) {
            if p.claims[v] == Claim::Unclaimed && witness[v].is_none() {
                witness[v] = Some(w);
            }
        }
    }
    witness
        .iter()
        .enumerate()
        .filter_map(|(v, w)| w.map(|witness| Trap { vertex: v, witness }))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointedPosition {
    pub position: Position,
    pub turn: Player,
}

impl PointedPosition {
    pub fn new(position: Position, turn: Player) -> Self {
        PointedPosition { position, turn }
    }

    /// Fresh board, Alice to move.
    pub fn start(graph: Graph) -> Self {
        PointedPosition::new(Position::fresh(graph), Player::Alice)
    }

    pub fn legal_moves(&self) -> Vec<Vertex> {
        legal_moves(self)
    }

    pub fn apply(&self, v: Vertex) -> Result<PointedPosition, PositionError> {
        apply_move(self, v)
    }

    pub fn status(&self) -> Result<GameStatus, PositionError> {
        game_status(self)
    }
}

pub fn legal_moves(pp: &PointedPosition) -> Vec<Vertex> {
    pp.position.unclaimed()
}

pub fn apply_move(pp: &PointedPosition, v: Vertex) -> Result<PointedPosition, PositionError> {
    Ok(PointedPosition {
        position: pp.position.with_claim(v, pp.turn)?,
        turn: pp.turn.other(),
    })
}

pub fn game_status(pp: &PointedPosition) -> Result<GameStatus, PositionError> {
    let p = &pp.position;
    match (p.dominates(Player::Alice), p.dominates(Player::Bob)) {
        (true, true) => Err(PositionError::IllegalState),
        (true, false) => Ok(GameStatus::AliceDominates),
        (false, true) => Ok(GameStatus::BobDominates),
        (false, false) if p.unclaimed_count() == 0 => Ok(GameStatus::Exhausted),
        (false, false) => Ok(GameStatus::Ongoing),
    }
}
