//! The user-facing entry points: solve one instance by the cheapest exact
//! method, and cross-check the forest procedure against the oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closed_form::{cycle_outcome, path_outcome, ClosedFormRule};
use crate::engine::{Engine, EngineConfig, EngineError, EngineStats, MoveEval};
use crate::forest::{explain, ForestError, ForestTrace};
use crate::generate::{all_labeled_trees, random_forest_with, random_sizes, random_tree_with};
use crate::graph::{Graph, GraphClass, Vertex};
use crate::instance::{instance_digest, InstanceFile};
use crate::position::{GameValue, Outcome, Player, PointedPosition, PositionError};

/// Default cap on unclaimed vertices handed to the oracle.
pub const DEFAULT_MAX_UNCLAIMED: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("{unclaimed} unclaimed vertices exceed the oracle limit of {limit}")]
    Guard { unclaimed: usize, limit: usize },
    #[error(transparent)]
    Position(#[from] PositionError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Forest(#[from] ForestError),
}

impl SolveError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            SolveError::Guard { .. } | SolveError::Engine(EngineError::CapacityExceeded { .. })
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    PathTheorem,
    CycleTheorem,
    Forest,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub outcome: Outcome,
    pub method: Method,
    /// Exact value, when the oracle was used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<GameValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<ForestTrace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<EngineStats>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub max_unclaimed: usize,
    pub engine: EngineConfig,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_unclaimed: DEFAULT_MAX_UNCLAIMED,
            engine: EngineConfig::default(),
        }
    }
}

/// Fresh positions with Alice to move go to the closed forms or the forest
/// procedure when the graph allows; everything else goes to the oracle.
pub fn run_solve(inst: &InstanceFile, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    let fresh = !inst.has_claims() && inst.turn.unwrap_or(Player::Alice) == Player::Alice;
    if fresh {
        let n = inst.graph.vertex_count();
        let closed = match inst.graph.classify() {
            GraphClass::SinglePath => Some(path_outcome(n)),
            GraphClass::SingleCycle => Some(cycle_outcome(n)),
            GraphClass::Forest => {
                let trace = explain(&inst.graph)?;
                return Ok(SolveReport {
                    outcome: trace.outcome,
                    method: Method::Forest,
                    value: None,
                    trace: Some(trace),
                    stats: None,
                });
            }
            GraphClass::Other => None,
        };
        if let Some(Ok(answer)) = closed {
            return Ok(SolveReport {
                outcome: answer.outcome,
                method: match answer.rule {
                    ClosedFormRule::PathTheorem => Method::PathTheorem,
                    ClosedFormRule::CycleTheorem => Method::CycleTheorem,
                },
                value: None,
                trace: None,
                stats: None,
            });
        }
    }
    let oracle = run_oracle(&inst.pointed()?, opts)?;
    Ok(SolveReport {
        outcome: oracle.value.outcome(),
        method: Method::Oracle,
        value: Some(oracle.value),
        trace: None,
        stats: Some(oracle.stats),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub turn: Player,
    pub value: GameValue,
    pub outcome: Outcome,
    /// Best first move and its line, unless the game is already over.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best: Option<MoveEval>,
    pub stats: EngineStats,
}

pub fn check_guard(pp: &PointedPosition, limit: usize) -> Result<(), SolveError> {
    let unclaimed = pp.position.unclaimed_count();
    if unclaimed > limit {
        return Err(SolveError::Guard { unclaimed, limit });
    }
    Ok(())
}

pub fn run_oracle(pp: &PointedPosition, opts: &SolveOptions) -> Result<OracleReport, SolveError> {
    check_guard(pp, opts.max_unclaimed)?;
    let mut engine = Engine::new(pp.position.graph(), opts.engine)?;
    let value = engine.solve(pp)?;
    let best = engine.evaluate_moves(pp)?.first().copied();
    Ok(OracleReport {
        turn: pp.turn,
        value,
        outcome: value.outcome(),
        best,
        stats: engine.stats(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceKind {
    ExhaustiveTree,
    RandomTree,
    RandomForest,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckRow {
    pub index: usize,
    pub kind: InstanceKind,
    pub n: usize,
    pub digest: String,
    pub solver: Outcome,
    pub oracle: Outcome,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub seed: u64,
    pub instances: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub rows: Vec<CrosscheckRow>,
}

impl CrosscheckReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements == 0
    }

    pub fn disagreeing(&self) -> impl Iterator<Item = &CrosscheckRow> {
        self.rows.iter().filter(|r| !r.agree)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrosscheckConfig {
    pub max_n: usize,
    /// Random trees per size above the exhaustive range.
    pub samples: usize,
    pub forests: usize,
    pub seed: u64,
}

/// Largest size whose labelled trees are all enumerated.
pub const EXHAUSTIVE_MAX_N: usize = 7;

/// The instance list a crosscheck run covers, in report order.
pub fn crosscheck_instances(cfg: &CrosscheckConfig) -> Vec<(InstanceKind, Graph)> {
    let mut out = Vec::new();
    for n in 1..=cfg.max_n.min(EXHAUSTIVE_MAX_N) {
        out.extend(all_labeled_trees(n).map(|g| (InstanceKind::ExhaustiveTree, g)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for n in EXHAUSTIVE_MAX_N + 1..=cfg.max_n {
        for _ in 0..cfg.samples {
            out.push((InstanceKind::RandomTree, random_tree_with(n, &mut rng)));
        }
    }
    if cfg.max_n >= 2 {
        for _ in 0..cfg.forests {
            let components = rng.gen_range(2..=3).min(cfg.max_n);
            let n = rng.gen_range(components.max(4)..=cfg.max_n.max(components));
            let sizes = random_sizes(n, components, &mut rng);
            out.push((
                InstanceKind::RandomForest,
                random_forest_with(&sizes, &mut rng),
            ));
        }
    }
    out
}

pub fn run_crosscheck(
    cfg: &CrosscheckConfig,
    opts: &SolveOptions,
) -> Result<CrosscheckReport, SolveError> {
    if cfg.max_n > opts.max_unclaimed {
        return Err(SolveError::Guard {
            unclaimed: cfg.max_n,
            limit: opts.max_unclaimed,
        });
    }
    let instances = crosscheck_instances(cfg);
    let rows: Result<Vec<CrosscheckRow>, SolveError> = instances
        .par_iter()
        .enumerate()
        .map(|(index, (kind, g))| {
            let solver = explain(g)?.outcome;
            let mut engine = Engine::new(g, opts.engine)?;
            let oracle = engine.outcome(&PointedPosition::start(g.clone()))?;
            Ok(CrosscheckRow {
                index,
                kind: *kind,
                n: g.vertex_count(),
                digest: instance_digest(&InstanceFile::fresh(g.clone())),
                solver,
                oracle,
                agree: solver == oracle,
            })
        })
        .collect();
    let rows = rows?;
    let agreements = rows.iter().filter(|r| r.agree).count();
    Ok(CrosscheckReport {
        seed: cfg.seed,
        instances: rows.len(),
        agreements,
        disagreements: rows.len() - agreements,
        rows,
    })
}

/// The vertices claimed by whoever dominates, if anyone does.
pub fn dominating_set(pp: &PointedPosition) -> Option<Vec<Vertex>> {
    [Player::Alice, Player::Bob]
        .into_iter()
        .find(|&p| pp.position.dominates(p))
        .map(|p| pp.position.claimed_by(p))
}
