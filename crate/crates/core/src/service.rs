//! Interactive play against the oracle: an in-memory store of sessions, each
//! pairing a human side with an engine that answers every human move.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{Engine, EngineConfig, EngineError};
use crate::graph::Vertex;
use crate::instance::parse_instance;
use crate::position::{Claim, GameStatus, GameValue, Outcome, Player, PointedPosition};
use crate::solve::{dominating_set, DEFAULT_MAX_UNCLAIMED};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ServiceError {
    #[error("{0}")]
    BadRequest(String),
    #[error("{unclaimed} unclaimed vertices exceed the limit of {limit}")]
    TooLarge { unclaimed: usize, limit: usize },
    #[error("no game with id {0}")]
    NotFound(String),
    #[error("it is not {0}'s turn")]
    OutOfTurn(Player),
    #[error("{0}")]
    IllegalMove(String),
    #[error("the game is over")]
    GameFinished,
    #[error("engine failure: {0}")]
    Engine(String),
}

impl ServiceError {
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::BadRequest(_) => "bad_request",
            ServiceError::TooLarge { .. } => "too_large",
            ServiceError::NotFound(_) => "not_found",
            ServiceError::OutOfTurn(_) => "out_of_turn",
            ServiceError::IllegalMove(_) => "illegal_move",
            ServiceError::GameFinished => "game_finished",
            ServiceError::Engine(_) => "engine_error",
        }
    }

    pub fn http_status(&self) -> u16 {
        match self {
            ServiceError::BadRequest(_) | ServiceError::TooLarge { .. } => 400,
            ServiceError::NotFound(_) => 404,
            ServiceError::OutOfTurn(_)
            | ServiceError::IllegalMove(_)
            | ServiceError::GameFinished => 409,
            ServiceError::Engine(_) => 500,
        }
    }
}

impl From<EngineError> for ServiceError {
    fn from(e: EngineError) -> Self {
        ServiceError::Engine(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub player: Player,
    pub vertex: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GameState {
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    pub claims: Vec<String>,
    pub turn: Player,
    pub status: GameStatus,
    pub human: Player,
    pub history: Vec<HistoryEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dominating_set: Option<Vec<Vertex>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisRow {
    pub vertex: Vertex,
    pub outcome: Outcome,
    pub value: GameValue,
    pub plies: u32,
}

struct Session {
    human: Player,
    pointed: PointedPosition,
    history: Vec<HistoryEntry>,
    engine: Engine,
}

impl Session {
    fn status(&self) -> GameStatus {
        self.pointed.status().unwrap_or(GameStatus::Exhausted)
    }

    fn state(&self) -> GameState {
        let g = self.pointed.position.graph();
        let status = self.status();
        GameState {
            n: g.vertex_count(),
            edges: g.edges().collect(),
            claims: self
                .pointed
                .position
                .claims()
                .iter()
                .map(|c| c.symbol().to_string())
                .collect(),
            turn: self.pointed.turn,
            status,
            human: self.human,
            history: self.history.clone(),
            dominating_set: if status.is_over() {
                dominating_set(&self.pointed)
            } else {
                None
            },
        }
    }

    fn apply(&mut self, v: Vertex) -> Result<(), ServiceError> {
        let player = self.pointed.turn;
        self.pointed = self
            .pointed
            .apply(v)
            .map_err(|e| ServiceError::IllegalMove(e.to_string()))?;
        self.history.push(HistoryEntry { player, vertex: v });
        Ok(())
    }

    fn engine_reply(&mut self) -> Result<(), ServiceError> {
        if self.status() == GameStatus::Ongoing && self.pointed.turn != self.human {
            let v = self.engine.best_move(&self.pointed)?;
            self.apply(v)?;
        }
        Ok(())
    }
}

pub struct GameService {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    max_unclaimed: usize,
    engine: EngineConfig,
}

impl Default for GameService {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_UNCLAIMED)
    }
}

impl GameService {
    pub fn new(max_unclaimed: usize) -> Self {
        GameService {
            sessions: RwLock::new(HashMap::new()),
            max_unclaimed,
            engine: EngineConfig::default(),
        }
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ServiceError> {
        self.sessions
            .read()
            .expect("session map lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ServiceError::NotFound(id.to_string()))
    }

    /// New game from instance text. If the engine moves first it replies
    /// before this returns.
    pub fn create(
        &self,
        instance_text: &str,
        human: Player,
    ) -> Result<(String, GameState), ServiceError> {
        let inst =
            parse_instance(instance_text).map_err(|e| ServiceError::BadRequest(e.to_string()))?;
        let pointed = inst
            .pointed()
            .map_err(|e| ServiceError::BadRequest(e.to_string()))?;
        let unclaimed = pointed.position.unclaimed_count();
        if unclaimed > self.max_unclaimed {
            return Err(ServiceError::TooLarge {
                unclaimed,
                limit: self.max_unclaimed,
            });
        }
        if pointed.status().is_err() {
            return Err(ServiceError::BadRequest(
                "both players already dominate".into(),
            ));
        }
        let engine = Engine::new(pointed.position.graph(), self.engine)?;
        let mut session = Session {
            human,
            pointed,
            history: Vec::new(),
            engine,
        };
        session.engine_reply()?;
        let state = session.state();
        let id = format!("{:032x}", rand::random::<u128>());
        self.sessions
            .write()
            .expect("session map lock")
            .insert(id.clone(), Arc::new(Mutex::new(session)));
        Ok((id, state))
    }

    pub fn state(&self, id: &str) -> Result<GameState, ServiceError> {
        let session = self.session(id)?;
        let guard = session.lock().expect("session lock");
        Ok(guard.state())
    }

    /// Apply the human's claim, then the engine's answer if the game goes on.
    pub fn play(&self, id: &str, v: Vertex) -> Result<GameState, ServiceError> {
        let session = self.session(id)?;
        let mut s = session.lock().expect("session lock");
        if s.status().is_over() {
            return Err(ServiceError::GameFinished);
        }
        if s.pointed.turn != s.human {
            return Err(ServiceError::OutOfTurn(s.human));
        }
        let n = s.pointed.position.vertex_count();
        if v >= n {
            return Err(ServiceError::IllegalMove(format!(
                "vertex {v} out of range 0..{n}"
            )));
        }
        if s.pointed.position.claim(v) != Claim::Unclaimed {
            return Err(ServiceError::IllegalMove(format!(
                "vertex {v} is already claimed"
            )));
        }
        s.apply(v)?;
        s.engine_reply()?;
        Ok(s.state())
    }

    /// Evaluation of every legal move for the side to move, best first.
    pub fn analysis(&self, id: &str) -> Result<Vec<AnalysisRow>, ServiceError> {
        let session = self.session(id)?;
        let mut s = session.lock().expect("session lock");
        let pointed = s.pointed.clone();
        let evals = s.engine.evaluate_moves(&pointed)?;
        Ok(evals
            .into_iter()
            .map(|e| AnalysisRow {
                vertex: e.vertex,
                outcome: e.value.outcome(),
                value: e.value,
                plies: e.plies_to_end,
            })
            .collect())
    }

    pub fn session_count(&self) -> usize {
        self.sessions.read().expect("session map lock").len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine;
    use crate::graph::Graph;
    use crate::instance::{serialize_instance, InstanceFile};

    fn text(g: Graph) -> String {
        serialize_instance(&InstanceFile::fresh(g))
    }

    #[test]
    fn create_examples() {
        let svc = GameService::default();
        let (_, s) = svc.create(&text(Graph::path(5)), Player::Alice).unwrap();
        assert!(s.history.is_empty());
        assert_eq!(s.turn, Player::Alice);

        let (_, s) = svc.create(&text(Graph::path(5)), Player::Bob).unwrap();
        let first = engine::best_move(
            &PointedPosition::start(Graph::path(5)),
            EngineConfig::default(),
        )
        .unwrap();
        assert_eq!(
            s.history,
            vec![HistoryEntry {
                player: Player::Alice,
                vertex: first
            }]
        );

        assert_eq!(
            svc.create(&text(Graph::path(30)), Player::Alice)
                .unwrap_err(),
            ServiceError::TooLarge {
                unclaimed: 30,
                limit: 14
            }
        );
        assert_eq!(
            svc.create("p 2 1\n", Player::Alice).unwrap_err().code(),
            "bad_request"
        );
    }

    #[test]
    fn move_examples() {
        let svc = GameService::default();
        let (id, _) = svc.create(&text(Graph::path(3)), Player::Alice).unwrap();
        let s = svc.play(&id, 1).unwrap();
        assert_eq!(s.status, GameStatus::AliceDominates);
        assert_eq!(s.dominating_set, Some(vec![1]));
        assert_eq!(svc.play(&id, 0).unwrap_err(), ServiceError::GameFinished);

        let (id, _) = svc.create(&text(Graph::path(5)), Player::Alice).unwrap();
        svc.play(&id, 0).unwrap();
        let err = svc.play(&id, 0).unwrap_err();
        assert_eq!((err.code(), err.http_status()), ("illegal_move", 409));
        assert_eq!(svc.play(&id, 9).unwrap_err().code(), "illegal_move");
        assert_eq!(svc.state("nope").unwrap_err().http_status(), 404);
    }

    #[test]
    fn engine_holds_the_draw_on_c10() {
        let svc = GameService::default();
        for first in 0..10 {
            let (id, _) = svc.create(&text(Graph::cycle(10)), Player::Alice).unwrap();
            let s = svc.play(&id, first).unwrap();
            let claims: Vec<Claim> = s
                .claims
                .iter()
                .map(|c| match c.as_str() {
                    "A" => Claim::Alice,
                    "B" => Claim::Bob,
                    _ => Claim::Unclaimed,
                })
                .collect();
            let pp = PointedPosition::new(
                crate::position::Position::new(Graph::cycle(10), claims).unwrap(),
                s.turn,
            );
            assert!(engine::solve(&pp, EngineConfig::default()).unwrap() <= GameValue::Draw);
        }
    }

    #[test]
    fn analysis_examples() {
        let svc = GameService::default();
        let (id, _) = svc.create(&text(Graph::path(3)), Player::Alice).unwrap();
        let rows = svc.analysis(&id).unwrap();
        assert_eq!(rows[0].vertex, 1);
        assert_eq!(rows[0].value, GameValue::AliceWin);

        let (id, _) = svc.create(&text(Graph::cycle(13)), Player::Alice).unwrap();
        assert!(svc
            .analysis(&id)
            .unwrap()
            .iter()
            .all(|r| r.value <= GameValue::Draw));

        let (id, _) = svc.create(&text(Graph::cycle(12)), Player::Alice).unwrap();
        assert!(svc
            .analysis(&id)
            .unwrap()
            .iter()
            .any(|r| r.value == GameValue::AliceWin));
    }

    #[test]
    fn sessions_replay_identically() {
        let svc = GameService::default();
        let run = || {
            let (id, _) = svc.create(&text(Graph::cycle(10)), Player::Alice).unwrap();
            let mut last = None;
            for _ in 0..5 {
                let s = svc.state(&id).unwrap();
                if s.status.is_over() {
                    break;
                }
                let v = s.claims.iter().position(|c| c == "-").unwrap();
                last = Some(svc.play(&id, v).unwrap());
            }
            last.unwrap().history
        };
        assert_eq!(run(), run());
    }
}
