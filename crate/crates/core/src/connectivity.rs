//! Vertex and edge connectivity, minimum separators and Menger path systems.
//!
//! Local vertex connectivity uses the vertex-splitting reduction: vertex `v`
//! becomes `in(v) = 2v -> out(v) = 2v + 1` with unit capacity, and edge
//! `{u, v}` becomes the arcs `out(u) -> in(v)` and `out(v) -> in(u)`.
//! Global values use the classical pair schedule: with a fixed vertex order
//! starting at a minimum-degree vertex, a separator of size below `c` misses
//! one of the first `c` vertices, so pairs `(v_i, v_j)`, `i < c`, `j > i`,
//! non-adjacent, cover every separator.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flow::{FlowNetwork, NetworkBuilder};
use crate::graph::{components, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnectivityError {
    #[error("vertex {v} is outside 0..{n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("endpoints coincide ({0})")]
    SameVertex(usize),
    #[error("vertices {0} and {1} are adjacent; no vertex cut separates them")]
    Adjacent(usize, usize),
}

/// A vertex set whose removal disconnects the graph, with the smallest
/// remaining component (ties broken by lowest minimum label).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorWitness {
    pub vertices: Vec<usize>,
    pub side_small: Vec<usize>,
}

impl SeparatorWitness {
    /// Returns `None` when removing `vertices` leaves fewer than two components.
    pub fn new(g: &Graph, mut vertices: Vec<usize>) -> Option<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        let comps = components(g, &vertices);
        if comps.len() < 2 {
            return None;
        }
        let side_small = comps.into_iter().min_by_key(|c| (c.len(), c[0])).unwrap();
        Some(SeparatorWitness { vertices, side_small })
    }

    /// Re-checks the witness by traversal.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        components(g, &self.vertices).len() >= 2
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum KConnectivity {
    Connected,
    TooFewVertices { n: usize, k: usize },
    Separated(SeparatorWitness),
}

impl KConnectivity {
    pub fn is_connected(&self) -> bool {
        matches!(self, KConnectivity::Connected)
    }

    pub fn witness(&self) -> Option<&SeparatorWitness> {
        match self {
            KConnectivity::Separated(w) => Some(w),
            _ => None,
        }
    }
}

/// Internally vertex-disjoint `a`-`b` paths, each listed from `a` to `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystem {
    pub a: usize,
    pub b: usize,
    pub paths: Vec<Vec<usize>>,
}

impl PathSystem {
    /// Checks simplicity, host-graph membership and internal disjointness.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut used = vec![false; g.n()];
        for p in &self.paths {
            if p.len() < 2 || p[0] != self.a || *p.last().unwrap() != self.b {
                return false;
            }
            if p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                return false;
            }
            for &x in &p[1..p.len() - 1] {
                if x == self.a || x == self.b || used[x] {
                    return false;
                }
                used[x] = true;
            }
        }
        let direct = self.paths.iter().filter(|p| p.len() == 2).count();
        direct <= 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSearch {
    pub system: PathSystem,
    /// Max-flow value (capped at the request).
    pub flow_value: usize,
    /// When fewer paths than requested exist: the vertex cut that limits them.
    pub limiting_cut: Option<Vec<usize>>,
}

struct SplitFlow {
    net: FlowNetwork,
    n: usize,
}

impl SplitFlow {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut b = NetworkBuilder::with_capacity(2 * n, n + 2 * g.m());
        for v in 0..n {
            b.add(2 * v, 2 * v + 1, 1, 0);
        }
        for (u, v) in g.edges() {
            b.add(2 * u + 1, 2 * v, 1, 0);
            b.add(2 * v + 1, 2 * u, 1, 0);
        }
        SplitFlow { net: b.build(), n }
    }

    fn max_flow(&mut self, a: usize, b: usize, limit: usize, exclude_direct: bool) -> usize {
        self.net.reset();
        if exclude_direct {
            if let Some(e) = self.net.find_arc(2 * a + 1, 2 * b) {
                self.net.disable(e);
            }
        }
        self.net.augment(2 * a + 1, 2 * b, limit)
    }

    /// Vertex cut read off the residual network; valid after a maximum flow
    /// between non-adjacent terminals. Each saturated arc leaving the
    /// reachable side is charged to a vertex every path through it must use:
    /// `v` for `in(v) -> out(v)`, and the non-terminal end for an edge arc.
    fn cut(&mut self, a: usize, b: usize) -> Vec<usize> {
        let reach = self.net.reachable(2 * a + 1);
        let mut cut = Vec::new();
        for x in (0..2 * self.n).filter(|&x| reach[x]) {
            for e in self.net.arcs(x) {
                let h = self.net.head(e);
                // The direct arc `out(a) -> in(b)` is charged to no vertex.
                if reach[h] || self.net.original(e) <= 0 || (x == 2 * a + 1 && h == 2 * b) {
                    continue;
                }
                let v = if x % 2 == 0 {
                    x / 2
                } else if h / 2 != b {
                    h / 2
                } else {
                    x / 2
                };
                debug_assert!(v != a && v != b);
                cut.push(v);
            }
        }
        cut.sort_unstable();
        cut.dedup();
        cut
    }

    fn paths(&self, a: usize, b: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for e in self.net.arcs(2 * a + 1) {
            if self.net.flow(e) <= 0 {
                continue;
            }
            let mut path = vec![a];
            let mut node = self.net.head(e);
            loop {
                let v = node / 2;
                path.push(v);
                if v == b {
                    break;
                }
                // in(v) -> out(v), then the unique flow-carrying arc out of out(v).
                let out_v = 2 * v + 1;
                let next = self
                    .net
                    .arcs(out_v)
                    .find(|&f| self.net.flow(f) > 0 && self.net.head(f).is_multiple_of(2))
                    .expect("flow conservation at a split vertex");
                node = self.net.head(next);
            }
            out.push(path);
        }
        out
    }
}

/// Pairwise local connectivity queries against one graph. Cheap short-path
/// packings are tried before falling back to max-flow.
pub(crate) struct LocalConnectivity<'g> {
    g: &'g Graph,
    split: Option<SplitFlow>,
    mark: Vec<u32>,
    epoch: u32,
}

impl<'g> LocalConnectivity<'g> {
    pub(crate) fn new(g: &'g Graph) -> Self {
        LocalConnectivity { g, split: None, mark: vec![0; g.n()], epoch: 0 }
    }

    fn split(&mut self) -> &mut SplitFlow {
        let g = self.g;
        self.split.get_or_insert_with(|| SplitFlow::new(g))
    }

    fn bump(&mut self) -> u32 {
        // Two marks per query: N(b) membership and used vertices.
        self.epoch = self.epoch.wrapping_add(2);
        if self.epoch < 2 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 2;
        }
        self.epoch
    }

    /// Lower bound on the local connectivity of non-adjacent `a`, `b` from
    /// greedily packed paths of length 2 and 3, stopping at `cap`.
    fn short_paths(&mut self, a: usize, b: usize, cap: usize) -> usize {
        let g = self.g;
        let base = self.bump();
        let (in_nb, used) = (base - 1, base);
        for &y in g.neighbors(b) {
            self.mark[y] = in_nb;
        }
        let mut count = 0;
        for &x in g.neighbors(a) {
            if self.mark[x] == in_nb {
                self.mark[x] = used;
                count += 1;
                if count >= cap {
                    return count;
                }
            }
        }
        for &x in g.neighbors(a) {
            if x == b || self.mark[x] == used {
                continue;
            }
            for &y in g.neighbors(x) {
                if y != a && self.mark[y] == in_nb {
                    self.mark[x] = used;
                    self.mark[y] = used;
                    count += 1;
                    if count >= cap {
                        return count;
                    }
                    break;
                }
            }
        }
        count
    }

    /// `min(cap, kappa(a, b))` for non-adjacent `a`, `b`.
    pub(crate) fn local(&mut self, a: usize, b: usize, cap: usize) -> usize {
        if cap == 0 {
            return 0;
        }
        if self.short_paths(a, b, cap) >= cap {
            return cap;
        }
        self.split().max_flow(a, b, cap, false)
    }

    /// Minimum `a`-`b` vertex cut; `a`, `b` must be non-adjacent.
    pub(crate) fn min_cut(&mut self, a: usize, b: usize) -> Vec<usize> {
        let split = self.split();
        split.max_flow(a, b, usize::MAX, false);
        split.cut(a, b)
    }
}

/// Vertex order used by the pair schedules: lowest-label minimum-degree
/// vertex first, then the remaining vertices ascending.
fn schedule_order(g: &Graph) -> Vec<usize> {
    let first = g.min_degree_vertex().unwrap_or(0);
    std::iter::once(first).chain((0..g.n()).filter(|&v| v != first)).collect()
}

/// kappa(G): the largest `k` such that `g` is `k`-connected.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 || !g.is_connected() {
        return 0;
    }
    if g.is_complete() {
        return n - 1;
    }
    let order = schedule_order(g);
    let mut best = g.min_degree();
    let mut lc = LocalConnectivity::new(g);
    let mut i = 0;
    while i < n && i <= best {
        let a = order[i];
        for &b in &order[i + 1..] {
            if !g.has_edge(a, b) {
                best = best.min(lc.local(a, b, best));
            }
        }
        i += 1;
    }
    best
}

/// Decides `k`-connectivity, returning a separator of size at most `k - 1`
/// when the answer is no (or the distinct too-few-vertices failure).
pub fn is_k_connected(g: &Graph, k: usize) -> KConnectivity {
    let n = g.n();
    if k == 0 {
        return if n >= 1 { KConnectivity::Connected } else { KConnectivity::TooFewVertices { n, k } };
    }
    if n <= k {
        return KConnectivity::TooFewVertices { n, k };
    }
    if let Some(w) = SeparatorWitness::new(g, Vec::new()) {
        return KConnectivity::Separated(w);
    }
    let v = g.min_degree_vertex().unwrap();
    if g.degree(v) < k {
        let w = SeparatorWitness::new(g, g.neighbors(v).to_vec()).expect("neighborhood of a non-dominating vertex separates");
        return KConnectivity::Separated(w);
    }
    match k {
        1 => KConnectivity::Connected,
        2 => match first_articulation_point(g) {
            Some(c) => KConnectivity::Separated(SeparatorWitness::new(g, vec![c]).unwrap()),
            None => KConnectivity::Connected,
        },
        _ => {
            let order = schedule_order(g);
            let mut lc = LocalConnectivity::new(g);
            for i in 0..k {
                let a = order[i];
                for &b in &order[i + 1..] {
                    if !g.has_edge(a, b) && lc.local(a, b, k) < k {
                        let cut = lc.min_cut(a, b);
                        return KConnectivity::Separated(SeparatorWitness::new(g, cut).unwrap());
                    }
                }
            }
            KConnectivity::Connected
        }
    }
}

/// Lowest-labelled cut vertex of a graph, if any (iterative lowpoint DFS).
pub fn first_articulation_point(g: &Graph) -> Option<usize> {
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut time = 0;
    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbor index)
        let mut stack = vec![(root, UNSEEN, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, parent, idx) = *top;
            if idx < g.degree(v) {
                top.2 += 1;
                let u = g.neighbors(v)[idx];
                if disc[u] == UNSEEN {
                    disc[u] = time;
                    low[u] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((u, v, 0));
                } else if u != parent {
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if parent != UNSEEN {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
    }
    is_cut.iter().position(|&c| c)
}

fn check_pair(g: &Graph, a: usize, b: usize) -> Result<(), ConnectivityError> {
    let n = g.n();
    for v in [a, b] {
        if v >= n {
            return Err(ConnectivityError::VertexOutOfRange { v, n });
        }
    }
    if a == b {
        return Err(ConnectivityError::SameVertex(a));
    }
    Ok(())
}

/// Minimum vertex cut separating non-adjacent `a` and `b`.
pub fn min_separator(g: &Graph, a: usize, b: usize) -> Result<SeparatorWitness, ConnectivityError> {
    check_pair(g, a, b)?;
    if g.has_edge(a, b) {
        return Err(ConnectivityError::Adjacent(a, b));
    }
    let cut = LocalConnectivity::new(g).min_cut(a, b);
    Ok(SeparatorWitness::new(g, cut).expect("a max-flow cut separates its terminals"))
}

/// Local vertex connectivity of non-adjacent `a`, `b`.
pub fn local_vertex_connectivity(g: &Graph, a: usize, b: usize) -> Result<usize, ConnectivityError> {
    check_pair(g, a, b)?;
    if g.has_edge(a, b) {
        return Err(ConnectivityError::Adjacent(a, b));
    }
    Ok(LocalConnectivity::new(g).local(a, b, usize::MAX))
}

/// Up to `want` internally disjoint `a`-`b` paths by flow decomposition. With
/// `min_len_two`, a direct edge `ab` is excluded so every path has an
/// interior vertex.
pub fn disjoint_paths(
    g: &Graph,
    a: usize,
    b: usize,
    want: usize,
    min_len_two: bool,
) -> Result<PathSearch, ConnectivityError> {
    check_pair(g, a, b)?;
    let mut split = SplitFlow::new(g);
    let flow_value = split.max_flow(a, b, want, min_len_two);
    let paths = split.paths(a, b);
    debug_assert_eq!(paths.len(), flow_value);
    let limiting_cut = (flow_value < want).then(|| split.cut(a, b));
    Ok(PathSearch { system: PathSystem { a, b, paths }, flow_value, limiting_cut })
}

/// Global minimum edge cut size.
pub fn edge_connectivity(g: &Graph) -> usize {
    min_edge_cut(g).0
}

/// Global minimum edge cut: its size and one side of it (the side holding
/// vertex 0 when a flow certifies the cut, else a minimum-degree vertex).
/// `n - 1` max-flows from vertex 0, each capped at the best value so far
/// and seeded with paths of length <= 2.
pub fn min_edge_cut(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    if n < 2 {
        return (0, (0..n).collect());
    }
    if !g.is_connected() {
        return (0, components(g, &[]).swap_remove(0));
    }
    let mut b = NetworkBuilder::with_capacity(n, g.m());
    for (u, v) in g.edges() {
        b.add(u, v, 1, 1);
    }
    let mut net = b.build();
    let mut best = g.min_degree();
    let mut side = vec![g.min_degree_vertex().unwrap()];
    let root = 0;
    for v in 1..n {
        net.reset();
        let mut value = 0;
        if let Some(e) = net.find_arc(root, v) {
            if net.try_push_path(&[e]) {
                value += 1;
            }
        }
        let (ra, va) = (g.neighbors(root), g.neighbors(v));
        let (mut i, mut j) = (0, 0);
        while i < ra.len() && j < va.len() && value < best {
            match ra[i].cmp(&va[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let w = ra[i];
                    let e1 = net.find_arc(root, w).unwrap();
                    let e2 = net.find_arc(w, v).unwrap();
                    if net.try_push_path(&[e1, e2]) {
                        value += 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        if value < best {
            value += net.augment(root, v, best - value);
        }
        if value < best {
            best = value;
            let reach = net.reachable(root);
            side = (0..n).filter(|&x| reach[x]).collect();
        }
    }
    (best, side)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_examples() {
        assert_eq!(vertex_connectivity(&Graph::complete(6)), 5);
        assert_eq!(vertex_connectivity(&Graph::cycle(5)), 2);
        assert_eq!(vertex_connectivity(&Graph::petersen()), 3);
        assert_eq!(vertex_connectivity(&Graph::empty(1)), 0);
        assert_eq!(vertex_connectivity(&Graph::empty(3)), 0);
        assert_eq!(vertex_connectivity(&Graph::complete_bipartite(3, 4)), 3);
    }

    #[test]
    fn is_k_connected_examples() {
        assert!(is_k_connected(&Graph::cycle(5), 2).is_connected());
        let w = is_k_connected(&Graph::path(4), 2);
        let w = w.witness().unwrap();
        assert_eq!(w.len(), 1);
        assert!(w.vertices == vec![1] || w.vertices == vec![2]);
        let p = Graph::petersen();
        let w = is_k_connected(&p, 4);
        let w = w.witness().unwrap();
        assert_eq!(w.len(), 3);
        assert!(w.is_valid_for(&p));
        assert_eq!(is_k_connected(&Graph::complete(3), 3), KConnectivity::TooFewVertices { n: 3, k: 3 });
    }

    #[test]
    fn disconnected_witness_is_empty_separator() {
        let g = Graph::new(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        let res = is_k_connected(&g, 1);
        let w = res.witness().unwrap();
        assert!(w.is_empty());
        assert_eq!(w.side_small, vec![0, 1]);
        assert_eq!(edge_connectivity(&g), 0);
    }

    #[test]
    fn min_separator_examples() {
        assert_eq!(min_separator(&Graph::cycle(6), 0, 3).unwrap().len(), 2);
        assert_eq!(min_separator(&Graph::complete_bipartite(3, 3), 0, 1).unwrap().len(), 3);
        assert_eq!(min_separator(&Graph::cycle(6), 0, 1), Err(ConnectivityError::Adjacent(0, 1)));
        assert_eq!(min_separator(&Graph::cycle(6), 2, 2), Err(ConnectivityError::SameVertex(2)));
    }

    #[test]
    fn edge_connectivity_examples() {
        assert_eq!(edge_connectivity(&Graph::complete(4)), 3);
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]).unwrap();
        assert_eq!(edge_connectivity(&g), 1);
        assert_eq!(edge_connectivity(&Graph::complete(20)), 19);
        let (value, side) = min_edge_cut(&g);
        assert_eq!(value, 1);
        assert_eq!(side, vec![0, 1, 2]);
    }

    #[test]
    fn disjoint_path_examples() {
        let k5 = Graph::complete(5);
        let res = disjoint_paths(&k5, 0, 1, 3, false).unwrap();
        assert_eq!(res.system.paths.len(), 3);
        assert!(res.system.is_valid_for(&k5));
        assert!(res.system.paths.contains(&vec![0, 1]));

        let res = disjoint_paths(&k5, 0, 1, usize::MAX, true).unwrap();
        assert_eq!(res.system.paths.len(), 3);
        assert!(res.system.paths.iter().all(|p| p.len() >= 3));

        let c6 = Graph::cycle(6);
        let res = disjoint_paths(&c6, 0, 3, 2, false).unwrap();
        let mut paths = res.system.paths.clone();
        paths.sort();
        assert_eq!(paths, vec![vec![0, 1, 2, 3], vec![0, 5, 4, 3]]);

        let res = disjoint_paths(&c6, 0, 3, 5, false).unwrap();
        assert_eq!(res.flow_value, 2);
        let mut cut = res.limiting_cut.unwrap();
        cut.sort();
        assert_eq!(cut.len(), 2);
    }

    #[test]
    fn articulation_point_of_path() {
        assert_eq!(first_articulation_point(&Graph::path(4)), Some(1));
        assert_eq!(first_articulation_point(&Graph::cycle(7)), None);
        let bowtie = Graph::new(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(first_articulation_point(&bowtie), Some(2));
    }
}
