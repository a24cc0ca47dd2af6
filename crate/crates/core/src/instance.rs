//! Plain-text instance files.
//!
//! ```text
//! # comment
//! p <n> <m>
//! e <u> <v>      (m lines)
//! a <v>          Alice's claims, optional
//! b <v>          Bob's claims, optional
//! t A|B          side to move, default A
//! ```
//!
//! Vertex ids are 0-based, so the label map is always the identity.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::position::{Claim, Player, PointedPosition, Position, PositionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub graph: Graph,
    pub claims: Option<Vec<Claim>>,
    pub turn: Option<Player>,
    /// Original label of each dense id.
    pub label_map: Vec<Vertex>,
}

impl InstanceFile {
    pub fn fresh(graph: Graph) -> Self {
        let n = graph.vertex_count();
        InstanceFile {
            graph,
            claims: None,
            turn: None,
            label_map: (0..n).collect(),
        }
    }

    pub fn position(&self) -> Result<Position, PositionError> {
        match &self.claims {
            Some(c) => Position::new(self.graph.clone(), c.clone()),
            None => Ok(Position::fresh(self.graph.clone())),
        }
    }

    pub fn pointed(&self) -> Result<PointedPosition, PositionError> {
        Ok(PointedPosition::new(
            self.position()?,
            self.turn.unwrap_or(Player::Alice),
        ))
    }

    pub fn has_claims(&self) -> bool {
        self.claims
            .as_ref()
            .is_some_and(|c| c.iter().any(|&x| x != Claim::Unclaimed))
    }
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn number(line: usize, token: Option<&str>, what: &str) -> Result<usize, ParseError> {
    let token = token.ok_or_else(|| err(line, format!("missing {what}")))?;
    token.parse().map_err(|_| {
        err(
            line,
            format!("{what} '{token}' is not a non-negative integer"),
        )
    })
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut claims: Option<Vec<Claim>> = None;
    let mut turn = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let directive = tokens.next().unwrap_or_default();
        if directive != "p" && header.is_none() {
            return Err(err(line, format!("'{directive}' before the 'p' header")));
        }
        match directive {
            "p" => {
                if header.is_some() {
                    return Err(err(line, "duplicate 'p' header"));
                }
                let n = number(line, tokens.next(), "vertex count")?;
                let m = number(line, tokens.next(), "edge count")?;
                header = Some((n, m));
            }
            "e" => {
                let (n, _) = header.unwrap_or_default();
                let u = number(line, tokens.next(), "edge endpoint")?;
                let v = number(line, tokens.next(), "edge endpoint")?;
                for w in [u, v] {
                    if w >= n {
                        return Err(err(line, format!("vertex {w} out of range 0..{n}")));
                    }
                }
                if u == v {
                    return Err(err(line, format!("self-loop on vertex {u}")));
                }
                if edges
                    .iter()
                    .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
                {
                    return Err(err(line, format!("duplicate edge {u} {v}")));
                }
                edges.push((u, v));
            }
            "a" | "b" => {
                let (n, _) = header.unwrap_or_default();
                let v = number(line, tokens.next(), "vertex")?;
                if v >= n {
                    return Err(err(line, format!("vertex {v} out of range 0..{n}")));
                }
                let c = claims.get_or_insert_with(|| vec![Claim::Unclaimed; n]);
                if c[v] != Claim::Unclaimed {
                    return Err(err(line, format!("vertex {v} is already claimed")));
                }
                c[v] = if directive == "a" {
                    Claim::Alice
                } else {
                    Claim::Bob
                };
            }
            "t" => {
                if turn.is_some() {
                    return Err(err(line, "duplicate 't' line"));
                }
                let token = tokens.next().ok_or_else(|| err(line, "missing player"))?;
                turn =
                    Some(Player::from_letter(token).ok_or_else(|| {
                        err(line, format!("player must be A or B, got '{token}'"))
                    })?);
            }
            other => return Err(err(line, format!("unknown directive '{other}'"))),
        }
        if let Some(extra) = tokens.next() {
            return Err(err(line, format!("unexpected token '{extra}'")));
        }
    }

    let (n, m) = header.ok_or_else(|| err(last_line.max(1), "missing 'p' header"))?;
    if edges.len() != m {
        return Err(err(
            last_line.max(1),
            format!("header declares {m} edges but {} were given", edges.len()),
        ));
    }
    let graph = Graph::from_edges(n, edges).map_err(|e| err(last_line, e.to_string()))?;
    Ok(InstanceFile {
        graph,
        claims,
        turn,
        label_map: (0..n).collect(),
    })
}

pub fn serialize_instance(inst: &InstanceFile) -> String {
    let g = &inst.graph;
    let mut out = format!("p {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    if let Some(claims) = &inst.claims {
        for (v, c) in claims.iter().enumerate() {
            match c {
                Claim::Alice => writeln!(out, "a {v}").unwrap(),
                Claim::Bob => writeln!(out, "b {v}").unwrap(),
                Claim::Unclaimed => {}
            }
        }
    }
    if let Some(t) = inst.turn {
        writeln!(out, "t {}", t.letter()).unwrap();
    }
    out
}

/// 64-bit FNV-1a of the serialized instance, as 16 hex digits.
pub fn instance_digest(inst: &InstanceFile) -> String {
    let hash = serialize_instance(inst)
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
        });
    format!("{hash:016x}")
}
