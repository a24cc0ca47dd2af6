use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::skeleton::SkeletonDecomposition;
use super::ForestError;
use crate::graph::{Graph, Vertex};

/// How a skeleton component hangs off Alice's first move `v0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComponentShape {
    /// Path `v1..vn` with `v1` next to `v0`; `u` holds the indices below `n`
    /// whose vertex touches another support.
    Path {
        n: usize,
        u: BTreeSet<usize>,
    },
    /// Fork entered through a branch leaf.
    Fork {
        ok: bool,
        branches: usize,
    },
    Other,
}

impl fmt::Display for ComponentShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentShape::Path { n, u } => {
                let items: Vec<String> = u.iter().map(|i| i.to_string()).collect();
                write!(f, "PathShape({n},{{{}}})", items.join(","))
            }
            ComponentShape::Fork { ok, branches } => {
                write!(f, "ForkShape({ok}, {branches} branches)")
            }
            ComponentShape::Other => write!(f, "Other"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Favorability {
    Strong,
    Plain,
    Weak,
    Unfavorable,
}

impl fmt::Display for Favorability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn component_shape(
    f: &Graph,
    sk: &SkeletonDecomposition,
    v0: Vertex,
    component: &[Vertex],
) -> Result<ComponentShape, ForestError> {
    let n = f.vertex_count();
    let mut mask = vec![false; n];
    for &v in component {
        mask[v] = true;
    }
    let in_c: &[bool] = &mask;
    let entries: Vec<Vertex> = f
        .neighbors(v0)
        .iter()
        .copied()
        .filter(|&w| in_c[w])
        .collect();
    let s = match entries.as_slice() {
        [] => return Err(ForestError::NotAdjacent(v0)),
        [s] => *s,
        _ => return Ok(ComponentShape::Other),
    };
    let inner = |v: Vertex| f.neighbors(v).iter().copied().filter(move |&w| in_c[w]);
    let deg = |v: Vertex| inner(v).count();
    let touches_support = |v: Vertex| f.neighbors(v).iter().any(|&w| w != v0 && sk.is_support(w));

    if component.iter().all(|&v| deg(v) <= 2) && deg(s) <= 1 {
        let mut order = vec![s];
        let mut prev = usize::MAX;
        let mut cur = s;
        while let Some(next) = inner(cur).find(|&w| w != prev) {
            prev = cur;
            cur = next;
            order.push(cur);
        }
        let len = order.len();
        let u = (1..len)
            .filter(|&i| touches_support(order[i - 1]))
            .collect();
        return Ok(ComponentShape::Path { n: len, u });
    }

    let centers: Vec<Vertex> = component.iter().copied().filter(|&v| deg(v) >= 3).collect();
    let [c] = centers.as_slice() else {
        return Ok(ComponentShape::Other);
    };
    let c = *c;
    let branches = deg(c);
    if component.len() != 1 + 2 * branches || deg(s) != 1 {
        return Ok(ComponentShape::Other);
    }
    let mut allowed = vec![false; n];
    allowed[c] = true;
    let mut entry_mid = None;
    for a in inner(c) {
        let Some(b) = inner(a).find(|&w| w != c) else {
            return Ok(ComponentShape::Other);
        };
        if deg(a) != 2 || deg(b) != 1 {
            return Ok(ComponentShape::Other);
        }
        if b == s {
            entry_mid = Some(a);
        } else {
            allowed[b] = true;
        }
    }
    let Some(a1) = entry_mid else {
        return Ok(ComponentShape::Other);
    };
    allowed[a1] = true;
    let ok = component.iter().all(|&v| allowed[v] || !touches_support(v));
    Ok(ComponentShape::Fork { ok, branches })
}

pub fn classify_component(shape: &ComponentShape) -> Result<Favorability, ForestError> {
    match shape {
        ComponentShape::Other => Err(ForestError::UnclassifiableShape),
        ComponentShape::Fork { ok: true, .. } => Ok(Favorability::Weak),
        ComponentShape::Fork { ok: false, .. } => Ok(Favorability::Unfavorable),
        ComponentShape::Path { n, u } => Ok(classify_path(*n, u)),
    }
}

fn classify_path(n: usize, u: &BTreeSet<usize>) -> Favorability {
    let within = |allowed: &[usize]| u.iter().all(|i| allowed.contains(i));
    let strong = (n <= 2 && u.is_empty())
        || (n == 3 && (within(&[1]) || within(&[2])))
        || (n >= 4 && within(&[2, 3, n - 2]));
    let plain = n >= 9 && n % 2 == 1 && within(&[2, 5, n - 2]);
    let weak = (n == 9 || n == 11) && u.contains(&3) && u.contains(&5) && within(&[2, 3, 5, n - 2]);
    if strong {
        Favorability::Strong
    } else if plain {
        Favorability::Plain
    } else if weak {
        Favorability::Weak
    } else {
        Favorability::Unfavorable
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::gallery::{self, vertex};
    use crate::forest::skeleton::skeleton;

    fn path(n: usize, u: &[usize]) -> ComponentShape {
        ComponentShape::Path {
            n,
            u: u.iter().copied().collect(),
        }
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_component(&path(2, &[])), Ok(Favorability::Strong));
        assert_eq!(
            classify_component(&path(8, &[4])),
            Ok(Favorability::Unfavorable)
        );
        assert_eq!(
            classify_component(&path(9, &[3, 5])),
            Ok(Favorability::Weak)
        );
        assert_eq!(
            classify_component(&path(9, &[2, 5, 7])),
            Ok(Favorability::Plain)
        );
        assert_eq!(classify_component(&path(9, &[2])), Ok(Favorability::Strong));
        assert_eq!(classify_component(&path(3, &[1])), Ok(Favorability::Strong));
        assert_eq!(
            classify_component(&path(3, &[1, 2])),
            Ok(Favorability::Unfavorable)
        );
        assert_eq!(
            classify_component(&path(2, &[1])),
            Ok(Favorability::Unfavorable)
        );
        assert_eq!(
            classify_component(&path(11, &[3, 5, 9])),
            Ok(Favorability::Weak)
        );
        assert_eq!(
            classify_component(&path(13, &[3, 5])),
            Ok(Favorability::Unfavorable)
        );
        assert_eq!(
            classify_component(&ComponentShape::Fork {
                ok: true,
                branches: 4
            }),
            Ok(Favorability::Weak)
        );
        assert_eq!(
            classify_component(&ComponentShape::Fork {
                ok: false,
                branches: 3
            }),
            Ok(Favorability::Unfavorable)
        );
        assert_eq!(
            classify_component(&ComponentShape::Other),
            Err(ForestError::UnclassifiableShape)
        );
    }

    #[test]
    fn draw_path_shapes() {
        let (g, names) = gallery::draw_path_tree();
        let sk = skeleton(&g).unwrap();
        let c = &sk.components[0];
        let from_v0 = component_shape(&g, &sk, vertex(&names, "v0"), c).unwrap();
        assert_eq!(from_v0, path(8, &[4]));
        assert_eq!(from_v0.to_string(), "PathShape(8,{4})");
        // read from the other end the pendant sits at the mirrored index
        let from_v9 = component_shape(&g, &sk, vertex(&names, "v9"), c).unwrap();
        assert_eq!(from_v9, path(8, &[5]));
        assert_eq!(classify_component(&from_v9), Ok(Favorability::Unfavorable));
    }

    #[test]
    fn skeleton_forest_shapes() {
        let (g, names) = gallery::skeleton_forest();
        let sk = skeleton(&g).unwrap();
        let v0 = vertex(&names, "v0");
        let shapes: Vec<ComponentShape> = sk
            .components
            .iter()
            .map(|c| component_shape(&g, &sk, v0, c).unwrap())
            .collect();
        assert!(shapes.contains(&path(2, &[])));
        assert!(shapes.contains(&ComponentShape::Fork {
            ok: true,
            branches: 4
        }));
    }

    #[test]
    fn long_branched_component_is_other() {
        // v0 = 1 (leaf 0) enters at 2; 2 is the end of a path to hub 5 whose
        // other two branches have four skeleton vertices each
        let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)];
        let mut next = 6;
        for _ in 0..2 {
            let mut prev = 5;
            for _ in 0..4 {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            // support and leaf closing the branch
            edges.push((prev, next));
            edges.push((next, next + 1));
            next += 2;
        }
        let g = Graph::from_edges(next, edges).unwrap();
        let sk = skeleton(&g).unwrap();
        assert_eq!(sk.components.len(), 1);
        assert_eq!(
            component_shape(&g, &sk, 1, &sk.components[0]).unwrap(),
            ComponentShape::Other
        );
        assert_eq!(
            component_shape(&g, &sk, 1, &[sk.components[0][3]]),
            Err(ForestError::NotAdjacent(1))
        );
    }
}
