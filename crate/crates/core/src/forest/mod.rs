//! Linear-time outcome of the domination game on forests.
//!
//! The decision procedure peels off the easy cases in a fixed order
//! (isolated vertex, isolated edges, cherries, empty or star-shaped
//! skeleton) and otherwise tries each admissible first move `v0`, asking
//! whether every skeleton component is favourable for Alice with at most
//! one of them only weakly so.

mod favorability;
pub mod gallery;
mod labeling;
mod skeleton;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use favorability::{classify_component, component_shape, ComponentShape, Favorability};
pub use labeling::{
    bad_ones_per_root, candidate_first_moves, exhaustive_first_moves, ones_have_single_child,
    zero_one_labeling, ZeroOneLabeling,
};
pub use skeleton::{find_cherries, skeleton, Cherry, SkeletonDecomposition};

use crate::graph::{forest_has_perfect_matching, forest_matching_covering, Graph, Vertex};
use crate::position::Outcome;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("graph is not a forest")]
    NotAForest,
    #[error("vertex {0} is the centre of a cherry")]
    HasCherry(Vertex),
    #[error("vertex {0} lies in a component with fewer than three vertices")]
    SmallComponent(Vertex),
    #[error("vertex {0} is not adjacent to the component")]
    NotAdjacent(Vertex),
    #[error("component is neither a path nor a fork entered at a leaf")]
    UnclassifiableShape,
}

/// Which first moves the last stage of the procedure examines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateMode {
    /// Supports that connect the skeleton and pass the labelling test.
    Targeted,
    /// Every support adjacent to a skeleton leaf, unfiltered.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub component: Vec<Vertex>,
    pub shape: ComponentShape,
    pub favorability: Option<Favorability>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TraceStep {
    IsolatedVertex {
        vertex: Vertex,
        perfect_matching: bool,
    },
    IsolatedEdges {
        edges: Vec<(Vertex, Vertex)>,
    },
    EmptyForest,
    TwoCherries {
        centers: Vec<Vertex>,
    },
    OneCherry {
        center: Vertex,
        covering_matching: bool,
    },
    Skeleton {
        leaves: Vec<Vertex>,
        supports: Vec<Vertex>,
        skeleton: Vec<Vertex>,
        components: Vec<Vec<Vertex>>,
    },
    EmptySkeleton,
    DroppedTrees {
        trees: Vec<Vec<Vertex>>,
    },
    StarSkeleton {
        center: Vertex,
    },
    Candidates {
        mode: CandidateMode,
        vertices: Vec<Vertex>,
    },
    Candidate {
        vertex: Vertex,
        components: Vec<ComponentReport>,
        favorable: bool,
    },
}

/// Every branch the procedure took, in original vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestTrace {
    pub steps: Vec<TraceStep>,
    pub outcome: Outcome,
}

impl ForestTrace {
    /// Shapes reported for the candidate `v0`, if it was examined.
    pub fn candidate(&self, v0: Vertex) -> Option<&[ComponentReport]> {
        self.steps.iter().find_map(|s| match s {
            TraceStep::Candidate {
                vertex, components, ..
            } if *vertex == v0 => Some(components.as_slice()),
            _ => None,
        })
    }
}

fn set(vs: &[Vertex]) -> String {
    let items: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceStep::IsolatedVertex {
                vertex,
                perfect_matching,
            } => write!(
                f,
                "isolated vertex {vertex}; rest {} a perfect matching",
                if *perfect_matching { "has" } else { "has no" }
            ),
            TraceStep::IsolatedEdges { edges } => {
                write!(f, "isolated-edge reduction x{}", edges.len())
            }
            TraceStep::EmptyForest => write!(f, "empty forest"),
            TraceStep::TwoCherries { centers } => write!(f, "cherries at {}", set(centers)),
            TraceStep::OneCherry {
                center,
                covering_matching,
            } => write!(
                f,
                "one cherry at {center}; covering matching {}",
                if *covering_matching {
                    "exists"
                } else {
                    "does not exist"
                }
            ),
            TraceStep::Skeleton {
                leaves,
                supports,
                skeleton,
                components,
            } => write!(
                f,
                "skeleton: L={} M={} S={} ({} component{})",
                set(leaves),
                set(supports),
                set(skeleton),
                components.len(),
                if components.len() == 1 { "" } else { "s" }
            ),
            TraceStep::EmptySkeleton => write!(f, "empty skeleton"),
            TraceStep::DroppedTrees { trees } => {
                let parts: Vec<String> = trees.iter().map(|t| set(t)).collect();
                write!(f, "dropped trees with empty skeleton: {}", parts.join(" "))
            }
            TraceStep::StarSkeleton { center } => {
                write!(
                    f,
                    "skeleton is a star centred at {center} with no support neighbour"
                )
            }
            TraceStep::Candidates { mode, vertices } => {
                let label = match mode {
                    CandidateMode::Targeted => "candidates",
                    CandidateMode::Exhaustive => "candidates (exhaustive)",
                };
                write!(f, "{label}: {}", set(vertices))
            }
            TraceStep::Candidate {
                vertex,
                components,
                favorable,
            } => {
                let parts: Vec<String> = components
                    .iter()
                    .map(|c| match c.favorability {
                        Some(fav) => format!("{} {fav}", c.shape),
                        None => c.shape.to_string(),
                    })
                    .collect();
                write!(
                    f,
                    "candidate {vertex}: {}{}",
                    parts.join(", "),
                    if *favorable { " -> favourable" } else { "" }
                )
            }
        }
    }
}

impl fmt::Display for ForestTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            writeln!(f, "{step}")?;
        }
        write!(f, "outcome {}", self.outcome)
    }
}

pub fn forest_outcome(f: &Graph) -> Result<Outcome, ForestError> {
    Ok(explain(f)?.outcome)
}

pub fn explain(f: &Graph) -> Result<ForestTrace, ForestError> {
    explain_with(f, CandidateMode::Targeted)
}

/// Verification variant: examines every support next to a skeleton leaf.
pub fn forest_outcome_exhaustive(f: &Graph) -> Result<Outcome, ForestError> {
    Ok(explain_with(f, CandidateMode::Exhaustive)?.outcome)
}

pub fn explain_with(f: &Graph, mode: CandidateMode) -> Result<ForestTrace, ForestError> {
    if !f.is_forest() {
        return Err(ForestError::NotAForest);
    }
    let mut steps = Vec::new();
    let done = |steps: Vec<TraceStep>, outcome| Ok(ForestTrace { steps, outcome });
    let win_if = |b: bool| if b { Outcome::A } else { Outcome::D };

    if let Some(v) = f.vertices().find(|&v| f.degree(v) == 0) {
        let (rest, _) = f.without(&[v]);
        let pm = forest_has_perfect_matching(&rest).expect("subgraph of a forest");
        steps.push(TraceStep::IsolatedVertex {
            vertex: v,
            perfect_matching: pm,
        });
        return done(steps, win_if(pm));
    }

    let edges: Vec<(Vertex, Vertex)> = f
        .edges()
        .filter(|&(u, v)| f.degree(u) == 1 && f.degree(v) == 1)
        .collect();
    let gone: Vec<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    steps.push(TraceStep::IsolatedEdges { edges });
    let (g, map) = f.without(&gone);
    if g.is_empty() {
        steps.push(TraceStep::EmptyForest);
        return done(steps, Outcome::A);
    }

    let cherries = find_cherries(&g)?;
    if cherries.len() >= 2 {
        steps.push(TraceStep::TwoCherries {
            centers: cherries.iter().map(|c| map[c.center]).collect(),
        });
        return done(steps, Outcome::D);
    }
    if let [cherry] = cherries.as_slice() {
        let c = cherry.center;
        let required: Vec<Vertex> = g
            .vertices()
            .filter(|&v| v != c && !g.has_edge(v, c))
            .collect();
        let covering = forest_matching_covering(&g, c, &required).expect("required avoids N[c]");
        steps.push(TraceStep::OneCherry {
            center: map[c],
            covering_matching: covering,
        });
        return done(steps, win_if(covering));
    }

    let sk = skeleton(&g)?;
    let ids = |vs: &[Vertex]| vs.iter().map(|&v| map[v]).collect::<Vec<_>>();
    steps.push(TraceStep::Skeleton {
        leaves: ids(&sk.leaves),
        supports: ids(&sk.supports),
        skeleton: ids(&sk.skeleton),
        components: sk.components.iter().map(|c| ids(c)).collect(),
    });
    if sk.skeleton.is_empty() {
        steps.push(TraceStep::EmptySkeleton);
        return done(steps, Outcome::A);
    }

    // trees without skeleton vertices do not affect the outcome
    let (tree_of, _) = g.component_ids();
    let mut keeps_tree = vec![false; g.vertex_count()];
    for &v in &sk.skeleton {
        keeps_tree[tree_of[v]] = true;
    }
    let dropped: Vec<Vertex> = g.vertices().filter(|&v| !keeps_tree[tree_of[v]]).collect();
    let (g, map, sk) = if dropped.is_empty() {
        (g, map, sk)
    } else {
        let (dropped_graph, dropped_map) = g.induced_subgraph(&dropped);
        steps.push(TraceStep::DroppedTrees {
            trees: dropped_graph
                .connected_components()
                .into_iter()
                .map(|t| t.into_iter().map(|v| map[dropped_map[v]]).collect())
                .collect(),
        });
        let (h, hmap) = g.without(&dropped);
        let sk = skeleton(&h)?;
        let composed = hmap.iter().map(|&v| map[v]).collect();
        (h, composed, sk)
    };
    let ids = |vs: &[Vertex]| vs.iter().map(|&v| map[v]).collect::<Vec<_>>();

    if let Some(center) = star_center_without_support(&g, &sk) {
        steps.push(TraceStep::StarSkeleton {
            center: map[center],
        });
        return done(steps, Outcome::A);
    }

    let candidates = match mode {
        CandidateMode::Targeted => candidate_first_moves(&g, &sk),
        CandidateMode::Exhaustive => exhaustive_first_moves(&g, &sk),
    };
    steps.push(TraceStep::Candidates {
        mode,
        vertices: ids(&candidates),
    });
    let mut outcome = Outcome::D;
    for &v0 in &candidates {
        let mut reports = Vec::with_capacity(sk.components.len());
        let mut favorable = true;
        let mut weak = 0;
        for comp in &sk.components {
            let shape = match component_shape(&g, &sk, v0, comp) {
                Ok(shape) => shape,
                Err(ForestError::NotAdjacent(_)) => ComponentShape::Other,
                Err(e) => return Err(e),
            };
            let fav = classify_component(&shape).ok();
            match fav {
                Some(Favorability::Strong | Favorability::Plain) => {}
                Some(Favorability::Weak) => weak += 1,
                Some(Favorability::Unfavorable) | None => favorable = false,
            }
            reports.push(ComponentReport {
                component: ids(comp),
                shape,
                favorability: fav,
            });
        }
        favorable &= weak <= 1;
        if favorable {
            outcome = Outcome::A;
        }
        steps.push(TraceStep::Candidate {
            vertex: map[v0],
            components: reports,
            favorable,
        });
    }
    done(steps, outcome)
}

/// Centre of a star-shaped skeleton (at least three vertices) that has no
/// support neighbour.
fn star_center_without_support(g: &Graph, sk: &SkeletonDecomposition) -> Option<Vertex> {
    let [comp] = sk.components.as_slice() else {
        return None;
    };
    if comp.len() < 3 {
        return None;
    }
    let in_s = |w: &Vertex| comp.binary_search(w).is_ok();
    comp.iter().copied().find(|&c| {
        g.neighbors(c).iter().filter(|w| in_s(w)).count() == comp.len() - 1
            && !g.neighbors(c).iter().any(|&w| sk.is_support(w))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine;
    use crate::forest::gallery::vertex;
    use crate::generate::all_labeled_trees;
    use crate::position::PointedPosition;

    fn oracle(g: &Graph) -> Outcome {
        engine::outcome(&PointedPosition::start(g.clone())).unwrap()
    }

    #[test]
    fn two_spiders_is_a_draw_until_a_pair_is_removed() {
        let (g, names) = gallery::two_spiders();
        assert_eq!(forest_outcome(&g), Ok(Outcome::D));
        for (leaf, support) in [("a2", "a1"), ("b2", "b1"), ("c2", "c1"), ("d2", "d1")] {
            let (h, _) = g.without(&[vertex(&names, leaf), vertex(&names, support)]);
            assert_eq!(
                forest_outcome(&h),
                Ok(Outcome::A),
                "without {leaf}{support}"
            );
        }
    }

    #[test]
    fn draw_path_tree_trace() {
        let (g, names) = gallery::draw_path_tree();
        let trace = explain(&g).unwrap();
        assert_eq!(trace.outcome, Outcome::D);
        let v0 = trace.candidate(vertex(&names, "v0")).unwrap();
        assert_eq!(v0[0].shape.to_string(), "PathShape(8,{4})");
        assert_eq!(v0[0].favorability, Some(Favorability::Unfavorable));
        let v9 = trace.candidate(vertex(&names, "v9")).unwrap();
        assert_eq!(v9[0].shape.to_string(), "PathShape(8,{5})");
        assert_eq!(v9[0].favorability, Some(Favorability::Unfavorable));
        assert!(trace.to_string().ends_with("outcome D"));
    }

    #[test]
    fn skeleton_forest_is_an_alice_win() {
        let (g, _) = gallery::skeleton_forest();
        assert_eq!(forest_outcome(&g), Ok(Outcome::A));
    }

    #[test]
    fn small_traces() {
        let p4 = explain(&Graph::path(4)).unwrap();
        assert_eq!(p4.outcome, Outcome::A);
        assert_eq!(p4.steps.last(), Some(&TraceStep::EmptySkeleton));
        assert!(p4.to_string().starts_with("isolated-edge reduction x0"));

        let star = explain(&Graph::star(3)).unwrap();
        assert_eq!(star.outcome, Outcome::A);
        assert!(star
            .to_string()
            .contains("one cherry at 0; covering matching exists"));

        assert_eq!(forest_outcome(&Graph::empty(0)), Ok(Outcome::A));
        assert_eq!(forest_outcome(&Graph::empty(1)), Ok(Outcome::A));
        assert_eq!(forest_outcome(&Graph::empty(2)), Ok(Outcome::D));
        assert_eq!(
            forest_outcome(&Graph::cycle(3)),
            Err(ForestError::NotAForest)
        );
    }

    #[test]
    fn support_child_example_is_an_alice_win() {
        let g = Graph::from_edges(
            9,
            [
                (0, 3),
                (1, 5),
                (2, 3),
                (2, 4),
                (4, 5),
                (4, 6),
                (6, 7),
                (7, 8),
            ],
        )
        .unwrap();
        assert_eq!(oracle(&g), Outcome::A);
        assert_eq!(forest_outcome(&g), Ok(Outcome::A));
    }

    #[test]
    fn two_skeleton_trees_are_a_draw() {
        let g = Graph::from_edges(
            10,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (5, 6),
                (6, 7),
                (7, 8),
                (8, 9),
            ],
        )
        .unwrap();
        assert_eq!(forest_outcome(&g), Ok(Outcome::D));
        assert_eq!(oracle(&g), Outcome::D);
    }

    #[test]
    fn agrees_with_oracle_on_all_trees_up_to_six() {
        for n in 1..=6 {
            for g in all_labeled_trees(n) {
                let expected = oracle(&g);
                assert_eq!(
                    forest_outcome(&g),
                    Ok(expected),
                    "{:?}",
                    g.edges().collect::<Vec<_>>()
                );
                assert_eq!(forest_outcome_exhaustive(&g), Ok(expected));
            }
        }
    }
}
