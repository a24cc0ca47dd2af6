//! Constant-time answers for fresh paths and cycles, plus the outcomes that
//! the bounded-path lemma families predict. The predictions are test helpers;
//! the solve pipeline never consults them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounded::BoundedPathSpec;
use crate::position::{Outcome, Player};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosedFormRule {
    PathTheorem,
    CycleTheorem,
}

impl ClosedFormRule {
    pub fn tag(self) -> &'static str {
        match self {
            ClosedFormRule::PathTheorem => "path-theorem",
            ClosedFormRule::CycleTheorem => "cycle-theorem",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClosedFormAnswer {
    pub outcome: Outcome,
    pub rule: ClosedFormRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("a path needs at least one vertex")]
    EmptyPath,
    #[error("a cycle needs at least three vertices, got {0}")]
    CycleTooShort(usize),
    #[error("lemma predictions are only defined for bounded paths without pendants")]
    HasPendants,
}

/// Every fresh path is an Alice win.
pub fn path_outcome(n: usize) -> Result<ClosedFormAnswer, ClosedFormError> {
    if n == 0 {
        return Err(ClosedFormError::EmptyPath);
    }
    Ok(ClosedFormAnswer {
        outcome: Outcome::A,
        rule: ClosedFormRule::PathTheorem,
    })
}

/// `C_n` is a draw exactly when `n >= 10` and `n = 1 (mod 3)`.
pub fn cycle_outcome(n: usize) -> Result<ClosedFormAnswer, ClosedFormError> {
    if n < 3 {
        return Err(ClosedFormError::CycleTooShort(n));
    }
    let outcome = if n >= 10 && n % 3 == 1 {
        Outcome::D
    } else {
        Outcome::A
    };
    Ok(ClosedFormAnswer {
        outcome,
        rule: ClosedFormRule::CycleTheorem,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaContext {
    /// The bounded path is added to an arbitrary position, Bob to move.
    AdjoinedToAnyP,
    /// The bounded path is the whole board, Bob to move.
    Standalone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaPrediction {
    Forced(Outcome),
    /// Adding the path does not change the outcome of whatever it joins.
    Neutral,
}

pub fn bounded_path_lemma_prediction(
    spec: &BoundedPathSpec,
    context: LemmaContext,
) -> Result<Option<LemmaPrediction>, ClosedFormError> {
    if !spec.pendants.is_empty() {
        return Err(ClosedFormError::HasPendants);
    }
    use Player::{Alice as A, Bob as B};
    let prediction = match (spec.left, spec.right, context) {
        (A, B, LemmaContext::AdjoinedToAnyP) | (B, A, LemmaContext::AdjoinedToAnyP) => {
            Some(LemmaPrediction::Neutral)
        }
        (B, B, _) if spec.n % 2 == 1 => Some(LemmaPrediction::Forced(Outcome::D)),
        (A, A, LemmaContext::Standalone) if spec.n.is_multiple_of(3) => {
            Some(LemmaPrediction::Forced(Outcome::D))
        }
        _ => None,
    };
    Ok(prediction)
}
