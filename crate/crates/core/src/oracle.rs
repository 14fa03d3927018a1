//! Exhaustive ground truth for small graphs.
//!
//! Every spanning bipartite subgraph lies inside the bichromatic subgraph of
//! its own bipartition, and connectivity only grows with edges, so the best
//! spanning bipartite connectivity is the maximum of kappa over the
//! bichromatic subgraphs of all `2^(n-1)` colorings with vertex 0 red.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::connectivity::{is_k_connected, vertex_connectivity};
use crate::gen::{random_k_connected, rng, trial_seed};
use crate::graph::{Color, Graph, TwoColoring};
use crate::pipeline::span2connected;

pub const DEFAULT_CAP: usize = 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("n = {n}: {what}")]
    BadSize { n: usize, what: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    pub best_kappa: usize,
    /// Bit `v` set means vertex `v` is blue.
    pub argmax_mask: u64,
    pub argmax_coloring: Vec<Color>,
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | (1 << u))).collect()
}

fn mask_coloring(n: usize, mask: u64) -> Vec<Color> {
    (0..n).map(|v| Color::from_bit(mask >> v & 1 == 1)).collect()
}

/// Bichromatic subgraph for a color mask.
pub fn bichromatic_for_mask(g: &Graph, mask: u64) -> Graph {
    g.bichromatic_subgraph(&TwoColoring::from_slice(&mask_coloring(g.n(), mask)))
}

/// Smallest bichromatic degree under `mask`.
fn min_cross_degree(adj: &[u64], full: u64, mask: u64) -> usize {
    adj.iter()
        .enumerate()
        .map(|(v, &a)| {
            let other = if mask >> v & 1 == 1 { !mask & full } else { mask };
            (a & other).count_ones() as usize
        })
        .min()
        .unwrap_or(0)
}

fn check_size(g: &Graph, cap: Option<usize>) -> Result<(), OracleError> {
    let cap = cap.unwrap_or(DEFAULT_CAP).min(63);
    if g.n() > cap {
        return Err(OracleError::TooLarge { n: g.n(), cap });
    }
    Ok(())
}

const CHUNK: u64 = 1 << 12;

/// Maximum kappa of a bichromatic subgraph over all colorings; ties go to
/// the smallest mask. `cap` overrides the vertex limit.
pub fn best_bipartite_kappa_with(g: &Graph, cap: Option<usize>) -> Result<OracleVerdict, OracleError> {
    check_size(g, cap)?;
    let n = g.n();
    if n <= 1 {
        return Ok(OracleVerdict { best_kappa: 0, argmax_mask: 0, argmax_coloring: mask_coloring(n, 0) });
    }
    let adj = adjacency_masks(g);
    let full = (1u64 << n) - 1;
    let total = 1u64 << (n - 1);
    let chunks = total.div_ceil(CHUNK);
    let (best, mask) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut best = (0usize, u64::MAX);
            for half in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let mask = half << 1;
                let bound = min_cross_degree(&adj, full, mask).min(mask.count_ones() as usize).min(n - mask.count_ones() as usize);
                if bound < best.0 || (bound == best.0 && best.1 != u64::MAX) {
                    continue;
                }
                let kappa = vertex_connectivity(&bichromatic_for_mask(g, mask));
                if best.1 == u64::MAX || kappa > best.0 {
                    best = (kappa, mask);
                }
            }
            best
        })
        .reduce(|| (0, u64::MAX), |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a });
    let mask = if mask == u64::MAX { 0 } else { mask };
    Ok(OracleVerdict { best_kappa: best, argmax_mask: mask, argmax_coloring: mask_coloring(n, mask) })
}

pub fn best_bipartite_kappa(g: &Graph) -> Result<OracleVerdict, OracleError> {
    best_bipartite_kappa_with(g, None)
}

/// Whether some spanning bipartite subgraph is `k`-connected, stopping at
/// the first coloring that reaches `k`.
pub fn has_spanning_bipartite_k(g: &Graph, k: usize) -> Result<bool, OracleError> {
    check_size(g, None)?;
    let n = g.n();
    if k == 0 {
        return Ok(n >= 1);
    }
    if n < 2 {
        return Ok(false);
    }
    let adj = adjacency_masks(g);
    let full = (1u64 << n) - 1;
    Ok((0..1u64 << (n - 1)).into_par_iter().any(|half| {
        let mask = half << 1;
        min_cross_degree(&adj, full, mask) >= k && is_k_connected(&bichromatic_for_mask(g, mask), k).is_connected()
    }))
}

/// The odd cycle `C_n`, `n >= 5` odd.
pub fn odd_cycle_witness(n: usize) -> Result<Graph, OracleError> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(OracleError::BadSize { n, what: "needs an odd n >= 5" });
    }
    Ok(Graph::cycle(n))
}

/// `C_{n-1}` on `0..n-1` plus vertex `n - 1` joined to cycle vertices 0 and
/// 2, `n >= 6` even.
pub fn even_witness(n: usize) -> Result<Graph, OracleError> {
    if n < 6 || n % 2 == 1 {
        return Err(OracleError::BadSize { n, what: "needs an even n >= 6" });
    }
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, (i + 1) % (n - 1))).collect();
    edges.extend([(0, n - 1), (2, n - 1)]);
    Ok(Graph::new(n, &edges).expect("valid witness"))
}

/// Lower-bound witness of either parity.
pub fn witness(n: usize) -> Result<Graph, OracleError> {
    if n % 2 == 1 {
        odd_cycle_witness(n)
    } else {
        even_witness(n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub n: usize,
    pub kappa: usize,
    pub best_bipartite_kappa: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct F2Report {
    pub witnesses: Vec<WitnessCheck>,
    /// 2-connected labelled graphs on 4 vertices, and how many of them have
    /// a spanning bipartite 2-connected subgraph.
    pub four_vertex_two_connected: usize,
    pub four_vertex_passing: usize,
    pub sampled: usize,
    pub sampled_agreeing: usize,
}

impl F2Report {
    pub fn holds(&self) -> bool {
        self.witnesses.iter().all(|w| w.kappa == 2 && w.best_bipartite_kappa < 2)
            && self.four_vertex_passing == self.four_vertex_two_connected
            && self.sampled_agreeing == self.sampled
    }
}

/// All simple graphs on 4 labelled vertices.
pub fn all_four_vertex_graphs() -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
    (0u32..1 << pairs.len())
        .map(|set| {
            let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(i, _)| set >> i & 1 == 1).map(|(_, &e)| e).collect();
            Graph::new(4, &edges).unwrap()
        })
        .collect()
}

/// Checks the small cases of `f(2, n)`: witnesses for `5 <= n <= 11`, all
/// 4-vertex graphs, and `samples` seeded 3-connected graphs with `n <= 12`
/// on which the ear construction must succeed and agree with the oracle.
pub fn verify_f2_small(samples: usize, seed: u64) -> F2Report {
    let witnesses = (5..=11)
        .map(|n| {
            let g = witness(n).unwrap();
            WitnessCheck { n, kappa: vertex_connectivity(&g), best_bipartite_kappa: best_bipartite_kappa(&g).unwrap().best_kappa }
        })
        .collect();
    let two_connected: Vec<Graph> = all_four_vertex_graphs().into_iter().filter(|g| is_k_connected(g, 2).is_connected()).collect();
    let passing = two_connected.iter().filter(|g| best_bipartite_kappa(g).unwrap().best_kappa >= 2).count();
    let agreeing = (0..samples)
        .into_par_iter()
        .filter(|&i| {
            let mut r = rng(trial_seed(seed, i as u64));
            let n = 4 + (trial_seed(seed ^ 0x5eed, i as u64) % 9) as usize;
            let g = random_k_connected(n, 3, &mut r);
            span2connected(&g).is_ok() && best_bipartite_kappa(&g).unwrap().best_kappa >= 2
        })
        .count();
    F2Report {
        witnesses,
        four_vertex_two_connected: two_connected.len(),
        four_vertex_passing: passing,
        sampled: samples,
        sampled_agreeing: agreeing,
    }
}

/// Subset enumeration over vertex bitmasks (graphs with at most 63 vertices).
pub mod brute {
    use crate::graph::Graph;

    fn adjacency(g: &Graph) -> Vec<u64> {
        (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | (1 << u))).collect()
    }

    /// Vertices reachable from `start` avoiding `removed`.
    fn reach(adj: &[u64], start: usize, removed: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & !removed & !seen;
            seen |= new;
            frontier |= new;
        }
        seen
    }

    fn subsets_by_size(n: usize, size: usize) -> impl Iterator<Item = u64> {
        (0u64..1 << n).filter(move |s| s.count_ones() as usize == size)
    }

    /// Whether removing `removed` leaves at least two components.
    pub fn separates(g: &Graph, removed: u64) -> bool {
        let adj = adjacency(g);
        let n = g.n();
        let rest = ((1u64 << n) - 1) & !removed;
        if rest.count_ones() < 2 {
            return false;
        }
        let start = rest.trailing_zeros() as usize;
        reach(&adj, start, removed) != rest
    }

    /// kappa by trying all vertex subsets in increasing size.
    pub fn vertex_connectivity(g: &Graph) -> usize {
        let n = g.n();
        if n <= 1 {
            return 0;
        }
        for size in 0..n.saturating_sub(1) {
            if subsets_by_size(n, size).any(|s| separates(g, s)) {
                return size;
            }
        }
        n - 1
    }

    /// Smallest vertex set (excluding `a`, `b`) whose removal separates
    /// non-adjacent `a` and `b`; its size and the lowest such mask.
    pub fn min_separator(g: &Graph, a: usize, b: usize) -> (usize, u64) {
        let adj = adjacency(g);
        let n = g.n();
        let ends = (1u64 << a) | (1u64 << b);
        for size in 0..=n - 2 {
            if let Some(s) = subsets_by_size(n, size).find(|&s| s & ends == 0 && reach(&adj, a, s) >> b & 1 == 0) {
                return (size, s);
            }
        }
        unreachable!("non-adjacent vertices are separated by all other vertices")
    }

    /// Edge connectivity by trying all vertex bipartitions.
    pub fn edge_connectivity(g: &Graph) -> usize {
        let n = g.n();
        if n < 2 {
            return 0;
        }
        let adj = adjacency(g);
        (1u64..1 << (n - 1))
            .map(|half| {
                let side = half << 1;
                (0..n).filter(|&v| side >> v & 1 == 1).map(|v| (adj[v] & !side).count_ones() as usize).sum::<usize>()
            })
            .min()
            .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        assert_eq!(best_bipartite_kappa(&Graph::cycle(6)).unwrap().best_kappa, 2);
        assert_eq!(best_bipartite_kappa(&Graph::cycle(5)).unwrap().best_kappa, 1);
        let v = best_bipartite_kappa(&Graph::complete(6)).unwrap();
        assert_eq!(v.best_kappa, 3);
        let again = vertex_connectivity(&bichromatic_for_mask(&Graph::complete(6), v.argmax_mask));
        assert_eq!(again, 3);
        assert!(!has_spanning_bipartite_k(&Graph::cycle(5), 2).unwrap());
        assert!(has_spanning_bipartite_k(&Graph::cycle(6), 2).unwrap());
        let p = has_spanning_bipartite_k(&Graph::petersen(), 2).unwrap();
        assert_eq!(p, best_bipartite_kappa(&Graph::petersen()).unwrap().best_kappa >= 2);
        assert_eq!(best_bipartite_kappa(&Graph::complete(23)), Err(OracleError::TooLarge { n: 23, cap: 22 }));
    }

    #[test]
    fn witnesses() {
        assert_eq!(odd_cycle_witness(5).unwrap(), Graph::cycle(5));
        let w = even_witness(6).unwrap();
        assert_eq!(w.m(), 7);
        assert!(!w.has_edge(0, 2));
        let c7 = odd_cycle_witness(7).unwrap();
        assert_eq!(vertex_connectivity(&c7), 2);
        assert_eq!(best_bipartite_kappa(&c7).unwrap().best_kappa, 1);
        assert!(odd_cycle_witness(6).is_err());
        assert!(even_witness(7).is_err());
    }

    #[test]
    fn brute_matches_known_values() {
        assert_eq!(brute::vertex_connectivity(&Graph::petersen()), 3);
        assert_eq!(brute::vertex_connectivity(&Graph::complete(5)), 4);
        assert_eq!(brute::min_separator(&Graph::cycle(6), 0, 3).0, 2);
        assert_eq!(brute::edge_connectivity(&Graph::complete(5)), 4);
    }
}
