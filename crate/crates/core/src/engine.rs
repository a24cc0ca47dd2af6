//! Exact memoized minimax for the Maker-Maker domination game.
//!
//! Positions are held as bitmasks (one bit per vertex), so the engine handles
//! graphs of up to [`MAX_VERTICES`] vertices; what keeps a search tractable is
//! the number of *unclaimed* vertices, which callers guard separately.
//!
//! The value lattice has three points, so instead of alpha-beta the search
//! simply stops expanding children once the mover has reached the best value
//! available to them.

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::position::{
    Claim, GameStatus, GameValue, Outcome, Player, PointedPosition, PositionError,
};

pub const MAX_VERTICES: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Skip a move `x` when another free `y` dominates a superset of what `x`
    /// would newly dominate, for both players.
    pub prune_dominated_moves: bool,
    /// When an A-trap exists, only consider claiming it.
    pub prune_forced_traps: bool,
    /// Two distinct A-traps settle the node as a non-win for Alice.
    pub cutoff_double_trap: bool,
    pub memo_capacity: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            prune_dominated_moves: false,
            prune_forced_traps: false,
            cutoff_double_trap: false,
            memo_capacity: 1 << 26,
        }
    }
}

impl EngineConfig {
    pub fn all_prunings() -> Self {
        EngineConfig {
            prune_dominated_moves: true,
            prune_forced_traps: true,
            cutoff_double_trap: true,
            ..Default::default()
        }
    }

    pub fn is_pure(&self) -> bool {
        !(self.prune_dominated_moves || self.prune_forced_traps || self.cutoff_double_trap)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineStats {
    pub nodes_expanded: u64,
    pub memo_hits: u64,
    pub memo_entries: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("both players dominate the graph simultaneously")]
    IllegalState,
    #[error("graph has {0} vertices; the engine supports at most {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("memo table reached its capacity of {capacity} entries after {} nodes", stats.nodes_expanded)]
    CapacityExceeded { capacity: usize, stats: EngineStats },
    #[error("position belongs to a different graph than this engine")]
    GraphMismatch,
    #[error("the game is already over ({0:?})")]
    GameOver(GameStatus),
}

impl From<PositionError> for EngineError {
    fn from(_: PositionError) -> Self {
        EngineError::IllegalState
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoveEval {
    pub vertex: Vertex,
    /// Value of the game after this move, from Alice's point of view.
    pub value: GameValue,
    /// Plies until the game ends under optimal play with the engine's
    /// tie-breaks, counting this move.
    pub plies_to_end: u32,
}

#[derive(Debug, Clone, Copy)]
struct State {
    alice: u64,
    bob: u64,
    alice_dom: u64,
    bob_dom: u64,
    turn: Player,
}

impl State {
    fn key(&self) -> u128 {
        // bit 63 of the low word is free because n <= 63
        let turn = match self.turn {
            Player::Alice => 0,
            Player::Bob => 1u128 << 63,
        };
        self.alice as u128 | turn | (self.bob as u128) << 64
    }
}

/// A search engine bound to one graph. Memo tables persist across calls, so
/// repeated queries on the same board (interactive play) are cheap.
#[derive(Debug, Clone)]
pub struct Engine {
    graph: Graph,
    config: EngineConfig,
    closed: Vec<u64>,
    full: u64,
    memo: FxHashMap<u128, GameValue>,
    line_memo: FxHashMap<u128, (GameValue, u32)>,
    stats: EngineStats,
}

impl Engine {
    pub fn new(graph: &Graph, config: EngineConfig) -> Result<Self, EngineError> {
        let n = graph.vertex_count();
        if n > MAX_VERTICES {
            return Err(EngineError::TooManyVertices(n));
        }
        let closed = graph
            .vertices()
            .map(|v| {
                graph
                    .neighbors(v)
                    .iter()
                    .fold(1u64 << v, |m, &w| m | 1u64 << w)
            })
            .collect();
        Ok(Engine {
            graph: graph.clone(),
            config,
            closed,
            full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            memo: FxHashMap::default(),
            line_memo: FxHashMap::default(),
            stats: EngineStats::default(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn stats(&self) -> EngineStats {
        EngineStats {
            memo_entries: (self.memo.len() + self.line_memo.len()) as u64,
            ..self.stats
        }
    }

    pub fn clear(&mut self) {
        self.memo.clear();
        self.line_memo.clear();
        self.stats = EngineStats::default();
    }

    fn root_state(&self, pp: &PointedPosition) -> Result<State, EngineError> {
        if pp.position.graph() != &self.graph {
            return Err(EngineError::GraphMismatch);
        }
        let mut s = State {
            alice: 0,
            bob: 0,
            alice_dom: 0,
            bob_dom: 0,
            turn: pp.turn,
        };
        for (v, c) in pp.position.claims().iter().enumerate() {
            match c {
                Claim::Alice => {
                    s.alice |= 1 << v;
                    s.alice_dom |= self.closed[v];
                }
                Claim::Bob => {
                    s.bob |= 1 << v;
                    s.bob_dom |= self.closed[v];
                }
                Claim::Unclaimed => {}
            }
        }
        if s.alice_dom == self.full && s.bob_dom == self.full {
            return Err(EngineError::IllegalState);
        }
        Ok(s)
    }

    fn status_of(&self, s: &State) -> GameStatus {
        if s.alice_dom == self.full {
            GameStatus::AliceDominates
        } else if s.bob_dom == self.full {
            GameStatus::BobDominates
        } else if (s.alice | s.bob) == self.full {
            GameStatus::Exhausted
        } else {
            GameStatus::Ongoing
        }
    }

    fn play(&self, s: &State, v: Vertex) -> State {
        let mut next = *s;
        match s.turn {
            Player::Alice => {
                next.alice |= 1 << v;
                next.alice_dom |= self.closed[v];
            }
            Player::Bob => {
                next.bob |= 1 << v;
                next.bob_dom |= self.closed[v];
            }
        }
        next.turn = s.turn.other();
        next
    }

    fn terminal_value(&self, s: &State) -> Option<GameValue> {
        match self.status_of(s) {
            GameStatus::AliceDominates => Some(GameValue::AliceWin),
            GameStatus::BobDominates => Some(GameValue::BobWin),
            GameStatus::Exhausted => Some(GameValue::Draw),
            GameStatus::Ongoing => None,
        }
    }

    /// Free vertices that are A-traps, as a mask.
    fn a_traps(&self, s: &State, free: u64) -> u64 {
        let mut traps = 0;
        for &closed in &self.closed {
            let open = closed & !s.bob;
            if open.count_ones() == 1 && open & free != 0 {
                traps |= open;
            }
        }
        traps
    }

    fn undominated_moves(&self, s: &State, free: u64) -> u64 {
        let mut keep = free;
        let mut xs = free;
        while xs != 0 {
            let x = xs.trailing_zeros() as usize;
            xs &= xs - 1;
            let xa = self.closed[x] & !s.alice_dom;
            let xb = self.closed[x] & !s.bob_dom;
            let mut ys = free & !(1 << x);
            while ys != 0 {
                let y = ys.trailing_zeros() as usize;
                ys &= ys - 1;
                let ya = self.closed[y] & !s.alice_dom;
                let yb = self.closed[y] & !s.bob_dom;
                if xa & !ya == 0 && xb & !yb == 0 && (xa != ya || xb != yb || y < x) {
                    keep &= !(1 << x);
                    break;
                }
            }
        }
        keep
    }

    /// Moves ordered by how much the mover newly dominates, then by id.
    fn ordered_moves(&self, s: &State, mut moves: u64) -> Vec<Vertex> {
        let mine = match s.turn {
            Player::Alice => s.alice_dom,
            Player::Bob => s.bob_dom,
        };
        let mut out = Vec::with_capacity(moves.count_ones() as usize);
        while moves != 0 {
            out.push(moves.trailing_zeros() as usize);
            moves &= moves - 1;
        }
        out.sort_by_key(|&v| std::cmp::Reverse((self.closed[v] & !mine).count_ones()));
        out
    }

    fn check_capacity(&self) -> Result<(), EngineError> {
        if self.memo.len() + self.line_memo.len() >= self.config.memo_capacity {
            return Err(EngineError::CapacityExceeded {
                capacity: self.config.memo_capacity,
                stats: self.stats(),
            });
        }
        Ok(())
    }

    fn search(&mut self, s: &State) -> Result<GameValue, EngineError> {
        if let Some(v) = self.terminal_value(s) {
            return Ok(v);
        }
        let key = s.key();
        if let Some(&v) = self.memo.get(&key) {
            self.stats.memo_hits += 1;
            return Ok(v);
        }
        self.stats.nodes_expanded += 1;
        let free = self.full & !(s.alice | s.bob);

        let mut moves = free;
        let mut settled = None;
        if self.config.cutoff_double_trap || self.config.prune_forced_traps {
            let traps = self.a_traps(s, free);
            if self.config.cutoff_double_trap && traps.count_ones() >= 2 {
                settled = Some(GameValue::Draw);
            } else if self.config.prune_forced_traps && traps != 0 {
                moves = traps & traps.wrapping_neg();
            }
        }
        if settled.is_none() && self.config.prune_dominated_moves && moves == free {
            moves = self.undominated_moves(s, free);
        }

        let value = match settled {
            Some(v) => v,
            None => {
                let target = GameValue::best_for(s.turn);
                let mut best = GameValue::worst_for(s.turn);
                for v in self.ordered_moves(s, moves) {
                    let child = self.search(&self.play(s, v))?;
                    if prefers(s.turn, child, best) {
                        best = child;
                        if best == target {
                            break;
                        }
                    }
                }
                best
            }
        };
        self.check_capacity()?;
        self.memo.insert(key, value);
        Ok(value)
    }

    /// Exact value plus principal-variation length. Ignores prunings.
    fn line(&mut self, s: &State) -> Result<(GameValue, u32), EngineError> {
        if let Some(v) = self.terminal_value(s) {
            return Ok((v, 0));
        }
        let key = s.key();
        if let Some(&v) = self.line_memo.get(&key) {
            self.stats.memo_hits += 1;
            return Ok(v);
        }
        self.stats.nodes_expanded += 1;
        let mut free = self.full & !(s.alice | s.bob);
        let mut best: Option<(GameValue, u32)> = None;
        while free != 0 {
            let v = free.trailing_zeros() as usize;
            free &= free - 1;
            let (value, plies) = self.line(&self.play(s, v))?;
            let cand = (value, plies + 1);
            if best.is_none_or(|b| line_better(s.turn, cand, b)) {
                best = Some(cand);
            }
        }
        let best = best.expect("ongoing positions have a free vertex");
        self.check_capacity()?;
        self.line_memo.insert(key, best);
        Ok(best)
    }

    pub fn solve(&mut self, pp: &PointedPosition) -> Result<GameValue, EngineError> {
        let s = self.root_state(pp)?;
        self.search(&s)
    }

    pub fn outcome(&mut self, pp: &PointedPosition) -> Result<Outcome, EngineError> {
        Ok(self.solve(pp)?.outcome())
    }

    /// One evaluation per legal move, best first for the side to move: by
    /// value, then shortest win or longest resistance, then vertex id.
    pub fn evaluate_moves(&mut self, pp: &PointedPosition) -> Result<Vec<MoveEval>, EngineError> {
        let s = self.root_state(pp)?;
        if self.status_of(&s).is_over() {
            return Ok(Vec::new());
        }
        let mut evals = Vec::new();
        for v in pp.position.unclaimed() {
            let (value, plies) = self.line(&self.play(&s, v))?;
            evals.push(MoveEval {
                vertex: v,
                value,
                plies_to_end: plies + 1,
            });
        }
        let mover = s.turn;
        evals.sort_by(|a, b| {
            if line_better(mover, (a.value, a.plies_to_end), (b.value, b.plies_to_end)) {
                std::cmp::Ordering::Less
            } else if line_better(mover, (b.value, b.plies_to_end), (a.value, a.plies_to_end)) {
                std::cmp::Ordering::Greater
            } else {
                a.vertex.cmp(&b.vertex)
            }
        });
        Ok(evals)
    }

    pub fn best_move(&mut self, pp: &PointedPosition) -> Result<Vertex, EngineError> {
        let s = self.root_state(pp)?;
        let status = self.status_of(&s);
        if status.is_over() {
            return Err(EngineError::GameOver(status));
        }
        Ok(self.evaluate_moves(pp)?[0].vertex)
    }
}

fn prefers(mover: Player, a: GameValue, b: GameValue) -> bool {
    match mover {
        Player::Alice => a > b,
        Player::Bob => a < b,
    }
}

fn line_better(mover: Player, a: (GameValue, u32), b: (GameValue, u32)) -> bool {
    if a.0 != b.0 {
        return prefers(mover, a.0, b.0);
    }
    if a.0.is_win_for(mover) {
        a.1 < b.1
    } else {
        a.1 > b.1
    }
}

pub fn solve(pp: &PointedPosition, config: EngineConfig) -> Result<GameValue, EngineError> {
    Engine::new(pp.position.graph(), config)?.solve(pp)
}

pub fn outcome(pp: &PointedPosition) -> Result<Outcome, EngineError> {
    Ok(solve(pp, EngineConfig::default())?.outcome())
}

pub fn evaluate_moves(
    pp: &PointedPosition,
    config: EngineConfig,
) -> Result<Vec<MoveEval>, EngineError> {
    Engine::new(pp.position.graph(), config)?.evaluate_moves(pp)
}

pub fn best_move(pp: &PointedPosition, config: EngineConfig) -> Result<Vertex, EngineError> {
    Engine::new(pp.position.graph(), config)?.best_move(pp)
}
