//! Maximum matchings across edge cuts (Hopcroft-Karp with a Konig cover as
//! the optimality certificate) and per-part representative edge sets.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectivity::SeparatorWitness;
use crate::graph::Graph;
use crate::pipeline::Regime;

const NIL: usize = usize::MAX;

/// Maximum matching of a bipartite graph with left side `0..adj.len()` and
/// right side `0..right`. Returns `(match_left, match_right)`.
pub fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let left = adj.len();
    let mut ml = vec![NIL; left];
    let mut mr = vec![NIL; right];
    let mut dist = vec![0usize; left];
    let mut it = vec![0usize; left];
    loop {
        // BFS layering from free left vertices.
        let mut queue = std::collections::VecDeque::new();
        for u in 0..left {
            if ml[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = NIL;
            }
        }
        let mut reachable_free = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = mr[v];
                if w == NIL {
                    reachable_free = true;
                } else if dist[w] == NIL {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !reachable_free {
            break;
        }
        it.iter_mut().for_each(|x| *x = 0);
        for u in 0..left {
            if ml[u] == NIL {
                augment(u, adj, &mut ml, &mut mr, &mut dist, &mut it);
            }
        }
    }
    let wrap = |m: Vec<usize>| m.into_iter().map(|x| (x != NIL).then_some(x)).collect();
    (wrap(ml), wrap(mr))
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    ml: &mut [usize],
    mr: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    while it[u] < adj[u].len() {
        let v = adj[u][it[u]];
        it[u] += 1;
        let w = mr[v];
        if w == NIL || (dist[w] == dist[u] + 1 && augment(w, adj, ml, mr, dist, it)) {
            ml[u] = v;
            mr[v] = u;
            return true;
        }
    }
    dist[u] = NIL;
    false
}

/// Konig vertex cover from a maximum matching: with `Z` the vertices reached
/// from free left vertices by alternating paths, the cover is
/// `(L \ Z) + (R & Z)`. Returned as (left indices, right indices).
pub fn konig_cover(adj: &[Vec<usize>], ml: &[Option<usize>], mr: &[Option<usize>]) -> (Vec<usize>, Vec<usize>) {
    let left = adj.len();
    let mut zl = vec![false; left];
    let mut zr = vec![false; mr.len()];
    let mut stack: Vec<usize> = (0..left).filter(|&u| ml[u].is_none()).collect();
    for &u in &stack {
        zl[u] = true;
    }
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !zr[v] && ml[u] != Some(v) {
                zr[v] = true;
                if let Some(w) = mr[v] {
                    if !zl[w] {
                        zl[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
    }
    let cover_l = (0..left).filter(|&u| !zl[u]).collect();
    let cover_r = (0..mr.len()).filter(|&v| zr[v]).collect();
    (cover_l, cover_r)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("the part must be a non-empty proper subset of the vertex set")]
    NotAProperPart,
    #[error("vertex {0} is outside the graph")]
    VertexOutOfRange(usize),
}

/// A maximum matching of the edge cut between `part` and its complement,
/// with a vertex cover of equal size certifying maximality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutMatching {
    /// `(inside, outside)` pairs, sorted.
    pub edges: Vec<(usize, usize)>,
    pub cover: Vec<usize>,
}

impl CutMatching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// All endpoints of matched edges.
    pub fn endpoints(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        v.sort_unstable();
        v
    }
}

/// Maximum matching between vertex sets `x` and `y` (disjoint) using only
/// edges of `g` with one end in each. Pairs are `(x-side, y-side)`.
pub fn max_matching_between(g: &Graph, x: &[usize], y: &[usize]) -> CutMatching {
    let mut local_y = vec![NIL; g.n()];
    for (i, &v) in y.iter().enumerate() {
        local_y[v] = i;
    }
    let adj: Vec<Vec<usize>> = x
        .iter()
        .map(|&u| g.neighbors(u).iter().map(|&w| local_y[w]).filter(|&j| j != NIL).collect())
        .collect();
    let (ml, mr) = hopcroft_karp(&adj, y.len());
    let (cl, cr) = konig_cover(&adj, &ml, &mr);
    let mut edges: Vec<(usize, usize)> =
        ml.iter().enumerate().filter_map(|(i, m)| m.map(|j| (x[i], y[j]))).collect();
    edges.sort_unstable();
    let mut cover: Vec<usize> = cl.into_iter().map(|i| x[i]).chain(cr.into_iter().map(|j| y[j])).collect();
    cover.sort_unstable();
    debug_assert_eq!(cover.len(), edges.len());
    CutMatching { edges, cover }
}

/// Maximum matching of the edge cut `(part, V \ part)`.
pub fn max_cut_matching(g: &Graph, part: &[usize]) -> Result<CutMatching, MatchingError> {
    let mut inside = vec![false; g.n()];
    for &v in part {
        if v >= g.n() {
            return Err(MatchingError::VertexOutOfRange(v));
        }
        inside[v] = true;
    }
    let size = inside.iter().filter(|&&b| b).count();
    if size == 0 || size == g.n() {
        return Err(MatchingError::NotAProperPart);
    }
    let x: Vec<usize> = (0..g.n()).filter(|&v| inside[v]).collect();
    let y: Vec<usize> = (0..g.n()).filter(|&v| !inside[v]).collect();
    Ok(max_matching_between(g, &x, &y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepresentativeKind {
    Matching,
    Star,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingletonType {
    Alpha,
    Beta,
    NotApplicable,
}

/// The edges a part sends to other parts; no other part is touched by more
/// than one of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentativeSet {
    pub part_index: usize,
    /// `(inside, outside)` pairs.
    pub edges: Vec<(usize, usize)>,
    pub kind: RepresentativeKind,
    pub singleton_type: SingletonType,
}

impl RepresentativeSet {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Read-only view of a vertex partition.
#[derive(Debug, Clone, Copy)]
pub struct PartitionView<'a> {
    pub parts: &'a [&'a [usize]],
    pub part_of: &'a [usize],
}

impl PartitionView<'_> {
    pub fn is_singleton(&self, i: usize) -> bool {
        self.parts[i].len() == 1
    }

    pub fn non_singleton_count(&self) -> usize {
        self.parts.iter().filter(|p| p.len() > 1).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RepresentativeRules {
    pub regime: Regime,
    pub k: usize,
    pub s: usize,
    pub d: usize,
    /// Report representative sets below their guaranteed size as errors.
    pub enforce_bounds: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Serialize, Deserialize)]
pub enum RepresentativeError {
    #[error("part {part}: cut matching has {size} < d = {d} edges")]
    MatchingTooSmall { part: usize, size: usize, d: usize, separator: Option<SeparatorWitness> },
    #[error("part {part}: |S| = {size} is below the guaranteed {bound:.3}")]
    BelowBound { part: usize, size: usize, bound: f64 },
    #[error("singleton part {part} (vertex {vertex}) is of type beta, impossible in this regime")]
    BetaSingleton { part: usize, vertex: usize },
    #[error("the partition has fewer than two parts")]
    TooFewParts,
}

/// Builds the representative set of part `i` under the regime's rules.
pub fn build_representatives(
    g: &Graph,
    view: PartitionView<'_>,
    i: usize,
    rules: &RepresentativeRules,
) -> Result<RepresentativeSet, RepresentativeError> {
    if view.parts.len() < 2 {
        return Err(RepresentativeError::TooFewParts);
    }
    let k = rules.k.max(1);
    let spread = (2 * k).saturating_sub(2).max(1) as f64;
    if view.is_singleton(i) {
        let v = view.parts[i][0];
        let singleton_nbrs: Vec<usize> =
            g.neighbors(v).iter().copied().filter(|&u| view.is_singleton(view.part_of[u])).collect();
        let quota = 3 * rules.d;
        if singleton_nbrs.len() >= quota {
            // Neighbor lists are sorted, so this keeps the smallest labels.
            let edges = singleton_nbrs[..quota].iter().map(|&u| (v, u)).collect();
            return Ok(RepresentativeSet {
                part_index: i,
                edges,
                kind: RepresentativeKind::Star,
                singleton_type: SingletonType::Alpha,
            });
        }
        if rules.enforce_bounds && rules.regime != Regime::A {
            return Err(RepresentativeError::BetaSingleton { part: i, vertex: v });
        }
        let mut best: Vec<Option<usize>> = vec![None; view.parts.len()];
        for &u in g.neighbors(v) {
            let j = view.part_of[u];
            if !view.is_singleton(j) && best[j].is_none() {
                best[j] = Some(u);
            }
        }
        let edges: Vec<(usize, usize)> = best.iter().filter_map(|u| u.map(|u| (v, u))).collect();
        let bound = rules.s.saturating_sub(quota) as f64 / spread;
        if rules.enforce_bounds && (edges.len() as f64) < bound {
            return Err(RepresentativeError::BelowBound { part: i, size: edges.len(), bound });
        }
        return Ok(RepresentativeSet {
            part_index: i,
            edges,
            kind: RepresentativeKind::Star,
            singleton_type: SingletonType::Beta,
        });
    }

    let part = view.parts[i];
    let m = max_cut_matching(g, part).map_err(|_| RepresentativeError::TooFewParts)?;
    if rules.enforce_bounds && m.len() < rules.d {
        let separator = SeparatorWitness::new(g, m.cover.clone());
        return Err(RepresentativeError::MatchingTooSmall { part: i, size: m.len(), d: rules.d, separator });
    }
    let (edges, bound) = match rules.regime {
        Regime::A => {
            // m.edges is sorted, so the first edge into each part is the smallest.
            let mut taken = vec![false; view.parts.len()];
            let edges: Vec<(usize, usize)> = m
                .edges
                .iter()
                .copied()
                .filter(|&(_, w)| !std::mem::replace(&mut taken[view.part_of[w]], true))
                .collect();
            (edges, rules.d as f64 / spread)
        }
        Regime::B | Regime::C => {
            let edges: Vec<(usize, usize)> =
                m.edges.iter().copied().filter(|&(_, w)| view.is_singleton(view.part_of[w])).collect();
            let t_star = view.non_singleton_count();
            (edges, rules.d as f64 - (2 * k - 2) as f64 * t_star as f64)
        }
    };
    if rules.enforce_bounds && (edges.len() as f64) < bound {
        return Err(RepresentativeError::BelowBound { part: i, size: edges.len(), bound });
    }
    Ok(RepresentativeSet {
        part_index: i,
        edges,
        kind: RepresentativeKind::Matching,
        singleton_type: SingletonType::NotApplicable,
    })
}
