//! Merging bipartite k-connected certificates: two certificates joined by
//! `2k - 1` disjoint cross edges, or a vertex joined by `2k - 1` edges.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectivity::is_k_connected;
use crate::graph::{BipartiteCertificate, Color, TwoColoring};

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MergeError {
    #[error("need at least {need} edges, got {have}")]
    TooFewEdges { have: usize, need: usize },
    #[error("edge ({0}, {1}) shares an endpoint with another listed edge")]
    NotDisjoint(usize, usize),
    #[error("edge ({0}, {1}) does not join the two sides")]
    NotCrossing(usize, usize),
    #[error("certificates overlap at vertex {0}")]
    Overlap(usize),
    #[error("vertex {0} already belongs to the certificate")]
    VertexInside(usize),
    #[error("no color class holds {k} of the neighbors")]
    NoHeavyClass { k: usize },
    #[error("merged certificate failed verification: {0}")]
    Verification(String),
}

/// How the color classes were fused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Classes `A1 + A3` / `A2 + A4`: the second certificate keeps its colors
    /// and the chosen edges are red-blue or blue-red.
    Keep,
    /// Classes `A1 + A4` / `A2 + A3`: the second certificate is recolored and
    /// the chosen edges were red-red or blue-blue.
    Flip,
    /// A single vertex joined the given class.
    Absorb { joined: Color },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergePlan {
    pub chosen_edges: Vec<(usize, usize)>,
    pub orientation: Orientation,
}

/// Sizes of `F13, F14, F23, F24` for cross edges given as color pairs
/// (color in the first certificate, color in the second).
pub fn split_classes(pairs: impl IntoIterator<Item = (Color, Color)>) -> [usize; 4] {
    let mut counts = [0; 4];
    for (a, b) in pairs {
        let idx = match (a, b) {
            (Color::Red, Color::Red) => 0,
            (Color::Red, Color::Blue) => 1,
            (Color::Blue, Color::Red) => 2,
            (Color::Blue, Color::Blue) => 3,
        };
        counts[idx] += 1;
    }
    counts
}

fn normalize(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

fn verify(cert: &BipartiteCertificate) -> Result<(), MergeError> {
    if !cert.coloring().is_proper_for(cert.edges()) {
        return Err(MergeError::Verification("coloring is not proper".into()));
    }
    let (local, _) = cert.local_graph();
    match is_k_connected(&local, cert.k()) {
        r if r.is_connected() => Ok(()),
        r => Err(MergeError::Verification(format!("not {}-connected: {:?}", cert.k(), r))),
    }
}

/// Joins two vertex-disjoint bipartite `k`-connected certificates using `k`
/// of the given pairwise disjoint cross edges.
pub fn union_parts(
    b1: &BipartiteCertificate,
    b2: &BipartiteCertificate,
    cross: &[(usize, usize)],
    k: usize,
) -> Result<(BipartiteCertificate, MergePlan), MergeError> {
    let need = (2 * k).saturating_sub(1);
    if cross.len() < need {
        return Err(MergeError::TooFewEdges { have: cross.len(), need });
    }
    if let Some(&v) = b1.vertices().iter().find(|&&v| b2.contains(v)) {
        return Err(MergeError::Overlap(v));
    }
    // Orient every edge as (side 1, side 2) and check disjointness.
    let mut oriented = Vec::with_capacity(cross.len());
    let mut seen = std::collections::BTreeSet::new();
    for &(u, v) in cross {
        let (x, y) = if b1.contains(u) && b2.contains(v) {
            (u, v)
        } else if b1.contains(v) && b2.contains(u) {
            (v, u)
        } else {
            return Err(MergeError::NotCrossing(u, v));
        };
        if !seen.insert(x) || !seen.insert(y) {
            return Err(MergeError::NotDisjoint(u, v));
        }
        oriented.push((x, y));
    }
    let c1 = b1.coloring();
    let c2 = b2.coloring();
    let same = |&(x, y): &(usize, usize)| c1.color(x) == c2.color(y);
    let [f13, f14, f23, f24] = split_classes(oriented.iter().map(|&(x, y)| (c1.color(x).unwrap(), c2.color(y).unwrap())));
    let (orientation, mut chosen): (Orientation, Vec<(usize, usize)>) = if f14 + f23 >= f13 + f24 {
        (Orientation::Keep, oriented.iter().copied().filter(|e| !same(e)).map(|(x, y)| normalize(x, y)).collect())
    } else {
        (Orientation::Flip, oriented.iter().copied().filter(same).map(|(x, y)| normalize(x, y)).collect())
    };
    if chosen.len() < k {
        return Err(MergeError::TooFewEdges { have: chosen.len(), need: k });
    }
    chosen.sort_unstable();
    chosen.truncate(k);

    let mut coloring: TwoColoring = c1.clone();
    match orientation {
        Orientation::Flip => coloring.extend(&c2.flipped()),
        _ => coloring.extend(c2),
    }
    let vertices: Vec<usize> = b1.vertices().iter().chain(b2.vertices()).copied().collect();
    let edges = b1.edges().iter().chain(b2.edges()).chain(&chosen).copied();
    let cert = BipartiteCertificate::new(vertices, edges, coloring, k).map_err(|e| MergeError::Verification(e.to_string()))?;
    verify(&cert)?;
    Ok((cert, MergePlan { chosen_edges: chosen, orientation }))
}

/// Adds vertex `v` to a bipartite `k`-connected certificate through `k` of
/// its (at least `2k - 1`) edges into one color class.
pub fn absorb_vertex(
    b1: &BipartiteCertificate,
    v: usize,
    edges: &[(usize, usize)],
    k: usize,
) -> Result<(BipartiteCertificate, MergePlan), MergeError> {
    if b1.contains(v) {
        return Err(MergeError::VertexInside(v));
    }
    let mut nbrs = Vec::with_capacity(edges.len());
    for &(a, b) in edges {
        let w = if a == v {
            b
        } else if b == v {
            a
        } else {
            return Err(MergeError::NotCrossing(a, b));
        };
        if !b1.contains(w) {
            return Err(MergeError::NotCrossing(a, b));
        }
        nbrs.push(w);
    }
    nbrs.sort_unstable();
    nbrs.dedup();
    let need = (2 * k).saturating_sub(1);
    if nbrs.len() < need {
        return Err(MergeError::TooFewEdges { have: nbrs.len(), need });
    }
    let coloring = b1.coloring();
    let in_class = |c: Color| nbrs.iter().copied().filter(|&w| coloring.color(w) == Some(c)).collect::<Vec<_>>();
    let (red, blue) = (in_class(Color::Red), in_class(Color::Blue));
    // `heavy` is the class v attaches to; v itself takes the other color.
    let heavy = match (red.len() >= k, blue.len() >= k) {
        (true, true) => {
            // v joins the currently smaller class, red on ties.
            if coloring.class_size(Color::Blue) > coloring.class_size(Color::Red) {
                Color::Blue
            } else {
                Color::Red
            }
        }
        (true, false) => Color::Red,
        (false, true) => Color::Blue,
        (false, false) => return Err(MergeError::NoHeavyClass { k }),
    };
    let targets = if heavy == Color::Red { &red } else { &blue };
    let chosen: Vec<(usize, usize)> = targets.iter().take(k).map(|&w| normalize(v, w)).collect();
    let joined = heavy.flip();
    let mut new_coloring = coloring.clone();
    new_coloring.set(v, joined);
    let vertices: Vec<usize> = b1.vertices().iter().copied().chain([v]).collect();
    let all_edges = b1.edges().iter().chain(&chosen).copied();
    let cert = BipartiteCertificate::new(vertices, all_edges, new_coloring, k).map_err(|e| MergeError::Verification(e.to_string()))?;
    verify(&cert)?;
    let mut chosen = chosen;
    chosen.sort_unstable();
    Ok((cert, MergePlan { chosen_edges: chosen, orientation: Orientation::Absorb { joined } }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn cert_from(g: &Graph, offset: usize, colors: &[Color], k: usize) -> BipartiteCertificate {
        let mut col = TwoColoring::new();
        for (i, &c) in colors.iter().enumerate() {
            col.set(i + offset, c);
        }
        let vertices = (offset..offset + g.n()).collect();
        BipartiteCertificate::new(vertices, g.edges().map(|(u, v)| (u + offset, v + offset)), col, k).unwrap()
    }

    use Color::{Blue as B, Red as R};

    #[test]
    fn k1_two_edges_make_a_path() {
        let b1 = cert_from(&Graph::path(2), 0, &[R, B], 1);
        let b2 = cert_from(&Graph::path(2), 2, &[R, B], 1);
        let (cert, plan) = union_parts(&b1, &b2, &[(1, 2)], 1).unwrap();
        assert_eq!(cert.edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(plan.orientation, Orientation::Keep);
        assert!(cert.is_spanning(4));
    }

    #[test]
    fn k2_c4_pair_merges() {
        let b1 = cert_from(&Graph::cycle(4), 0, &[R, B, R, B], 2);
        let b2 = cert_from(&Graph::cycle(4), 4, &[R, B, R, B], 2);
        let (cert, plan) = union_parts(&b1, &b2, &[(0, 4), (1, 5), (2, 7)], 2).unwrap();
        assert_eq!(plan.chosen_edges.len(), 2);
        assert_eq!(cert.len(), 8);
        assert!(is_k_connected(&cert.local_graph().0, 2).is_connected());
    }

    #[test]
    fn k2_uses_crossed_classes_when_same_classes_are_short() {
        // (0,4) is red-red; (1,4)... must be disjoint: (1,6) blue-red, (3,5) blue-blue? no:
        // pick one same-class edge and two cross-class edges.
        let b1 = cert_from(&Graph::cycle(4), 0, &[R, B, R, B], 2);
        let b2 = cert_from(&Graph::cycle(4), 4, &[R, B, R, B], 2);
        let f = [(0, 4), (1, 6), (2, 5)];
        let counts = split_classes(f.iter().map(|&(x, y)| (b1.coloring().color(x).unwrap(), b2.coloring().color(y).unwrap())));
        assert_eq!(counts[0] + counts[3], 1);
        let (_, plan) = union_parts(&b1, &b2, &f, 2).unwrap();
        assert_eq!(plan.orientation, Orientation::Keep);
        assert_eq!(plan.chosen_edges, vec![(1, 6), (2, 5)]);
    }

    #[test]
    fn union_rejects_bad_inputs() {
        let b1 = cert_from(&Graph::cycle(4), 0, &[R, B, R, B], 2);
        let b2 = cert_from(&Graph::cycle(4), 4, &[R, B, R, B], 2);
        assert_eq!(union_parts(&b1, &b2, &[(0, 4), (1, 5)], 2), Err(MergeError::TooFewEdges { have: 2, need: 3 }));
        assert_eq!(union_parts(&b1, &b2, &[(0, 4), (0, 5), (2, 6)], 2), Err(MergeError::NotDisjoint(0, 5)));
        assert_eq!(union_parts(&b1, &b2, &[(0, 4), (1, 2), (2, 6)], 2), Err(MergeError::NotCrossing(1, 2)));
    }

    #[test]
    fn absorb_examples() {
        let b1 = cert_from(&Graph::path(2), 0, &[R, B], 1);
        let (cert, _) = absorb_vertex(&b1, 2, &[(2, 1)], 1).unwrap();
        assert_eq!(cert.edges(), &[(0, 1), (1, 2)]);

        let c6 = cert_from(&Graph::cycle(6), 0, &[R, B, R, B, R, B], 2);
        let (cert, plan) = absorb_vertex(&c6, 6, &[(6, 0), (6, 2), (6, 4)], 2).unwrap();
        assert_eq!(plan.orientation, Orientation::Absorb { joined: B });
        assert_eq!(plan.chosen_edges, vec![(0, 6), (2, 6)]);
        assert!(is_k_connected(&cert.local_graph().0, 2).is_connected());

        let k44 = cert_from(&Graph::complete_bipartite(4, 4), 0, &[R, R, R, R, B, B, B, B], 3);
        let (cert, _) = absorb_vertex(&k44, 8, &[(8, 0), (8, 1), (8, 2), (8, 4), (8, 5)], 3).unwrap();
        assert_eq!(cert.len(), 9);
        assert!(is_k_connected(&cert.local_graph().0, 3).is_connected());
        assert_eq!(
            absorb_vertex(&k44, 8, &[(8, 0), (8, 4)], 2),
            Err(MergeError::TooFewEdges { have: 2, need: 3 })
        );
    }

    #[test]
    fn absorb_tie_balances_classes() {
        // K_{2,3}-like certificate with red class larger: v should join blue.
        let g = Graph::complete_bipartite(3, 2);
        let b1 = cert_from(&g, 0, &[R, R, R, B, B], 2);
        let (cert, plan) = absorb_vertex(&b1, 5, &[(5, 0), (5, 1), (5, 3), (5, 4)], 2).unwrap();
        assert_eq!(plan.orientation, Orientation::Absorb { joined: B });
        assert_eq!(cert.coloring().class_size(B), 3);
    }
}
