//! Immutable simple graphs and digraphs on dense vertex labels `0..n`,
//! two-colorings, and bipartite connectivity certificates.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("pair #{index} ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { index: usize, u: usize, v: usize, n: usize },
    #[error("pair #{index} is a self-loop on vertex {v}")]
    SelfLoop { index: usize, v: usize },
}

/// Simple undirected graph. Neighbor lists are sorted and duplicate free.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list, collapsing duplicates (in either
    /// orientation). Out-of-range endpoints and self-loops are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        for (index, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { index, u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { index, v });
            }
        }
        Ok(Self::from_edges_unchecked(n, edges.iter().copied()))
    }

    pub(crate) fn from_edges_unchecked(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            debug_assert!(u != v && u < n && v < n);
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut twice_m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice_m += list.len();
        }
        Graph { adj, m: twice_m / 2 }
    }

    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|v| (0..n).filter(|&u| u != v).collect()).collect();
        Graph { adj, m: n * n.saturating_sub(1) / 2 }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::from_edges_unchecked(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges_unchecked(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::from_edges_unchecked(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
    }

    /// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10, spokes i -- i+5.
    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        Self::from_edges_unchecked(10, outer.chain(inner).chain(spokes))
    }

    /// Triangular prism: two triangles 0-1-2 and 3-4-5 with rungs i -- i+3.
    pub fn prism() -> Self {
        let edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)];
        Self::from_edges_unchecked(6, edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Lowest-labelled vertex of minimum degree.
    pub fn min_degree_vertex(&self) -> Option<usize> {
        (0..self.n()).min_by_key(|&v| (self.degree(v), v))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.m == n * n.saturating_sub(1) / 2
    }

    /// Subgraph induced by `subset`, relabelled to `0..subset.len()` in the
    /// order given. The returned map sends new labels back to labels of `self`.
    pub fn induced_subgraph(&self, subset: &[usize]) -> (Graph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in subset.iter().enumerate() {
            local[v] = i;
        }
        let adj: Vec<Vec<usize>> = subset
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> =
                    self.adj[v].iter().map(|&u| local[u]).filter(|&u| u != usize::MAX).collect();
                list.sort_unstable();
                list
            })
            .collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        (Graph { adj, m }, subset.to_vec())
    }

    /// Spanning subgraph on the same vertex set with only the listed edges
    /// (which must be edges of `self`).
    pub fn spanning_subgraph(&self, edges: &[(usize, usize)]) -> Graph {
        debug_assert!(edges.iter().all(|&(u, v)| self.has_edge(u, v)));
        Self::from_edges_unchecked(self.n(), edges.iter().copied())
    }

    /// Spanning subgraph that keeps exactly the bichromatic edges.
    pub fn bichromatic_subgraph(&self, coloring: &TwoColoring) -> Graph {
        let color = coloring.to_dense(self.n());
        let adj: Vec<Vec<usize>> = (0..self.n())
            .map(|v| {
                self.adj[v]
                    .iter()
                    .copied()
                    .filter(|&u| matches!((color[v], color[u]), (Some(a), Some(b)) if a != b))
                    .collect()
            })
            .collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, m }
    }

    /// Spanning subgraph keeping the edges whose endpoints have distinct
    /// colors under an arbitrary vertex coloring.
    pub fn properly_colored_subgraph(&self, colors: &[usize]) -> Graph {
        assert_eq!(colors.len(), self.n());
        let adj: Vec<Vec<usize>> = (0..self.n())
            .map(|v| self.adj[v].iter().copied().filter(|&u| colors[u] != colors[v]).collect())
            .collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, m }
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || components(self, &[]).len() == 1
    }
}

/// Connected components of `g` with the vertices of `removed` deleted.
/// Each component is sorted; components are ordered by their minimum label.
pub fn components(g: &Graph, removed: &[usize]) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    for &v in removed {
        seen[v] = true;
    }
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Simple digraph; antiparallel arcs are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
    arcs: usize,
}

impl Digraph {
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Self, GraphError> {
        for (index, &(u, v)) in arcs.iter().enumerate() {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { index, u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { index, v });
            }
        }
        Ok(Self::from_arcs_unchecked(n, arcs.iter().copied()))
    }

    pub(crate) fn from_arcs_unchecked(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut out = vec![Vec::new(); n];
        for (u, v) in arcs {
            debug_assert!(u != v && u < n && v < n);
            out[u].push(v);
        }
        let mut count = 0;
        for list in &mut out {
            list.sort_unstable();
            list.dedup();
            count += list.len();
        }
        Digraph { out, arcs: count }
    }

    pub fn complete(n: usize) -> Self {
        let out = (0..n).map(|v| (0..n).filter(|&u| u != v).collect()).collect();
        Digraph { out, arcs: n * n.saturating_sub(1) }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.out.len()
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arcs
    }

    #[inline]
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn min_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }

    /// The underlying undirected graph; a 2-cycle becomes a single edge.
    pub fn underlying(&self) -> Graph {
        Graph::from_edges_unchecked(self.n(), self.arcs())
    }

    /// Subdigraph induced by `subset`, relabelled in the given order, with the
    /// map from new labels back to labels of `self`.
    pub fn induced(&self, subset: &[usize]) -> (Digraph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in subset.iter().enumerate() {
            local[v] = i;
        }
        let out: Vec<Vec<usize>> = subset
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> =
                    self.out[v].iter().map(|&u| local[u]).filter(|&u| u != usize::MAX).collect();
                list.sort_unstable();
                list
            })
            .collect();
        let arcs = out.iter().map(Vec::len).sum();
        (Digraph { out, arcs }, subset.to_vec())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    /// `Red` is 0, `Blue` is 1.
    pub fn bit(self) -> u8 {
        match self {
            Color::Red => 0,
            Color::Blue => 1,
        }
    }

    pub fn from_bit(bit: bool) -> Color {
        if bit {
            Color::Blue
        } else {
            Color::Red
        }
    }
}

/// Red/blue assignment on a subset of vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TwoColoring {
    colors: BTreeMap<usize, Color>,
}

impl TwoColoring {
    pub fn new() -> Self {
        Self::default()
    }

    /// Total coloring of `0..colors.len()`.
    pub fn from_slice(colors: &[Color]) -> Self {
        TwoColoring { colors: colors.iter().copied().enumerate().collect() }
    }

    pub fn monochromatic(vertices: impl IntoIterator<Item = usize>, color: Color) -> Self {
        TwoColoring { colors: vertices.into_iter().map(|v| (v, color)).collect() }
    }

    pub fn set(&mut self, v: usize, color: Color) {
        self.colors.insert(v, color);
    }

    #[inline]
    pub fn color(&self, v: usize) -> Option<Color> {
        self.colors.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.colors.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Color)> + '_ {
        self.colors.iter().map(|(&v, &c)| (v, c))
    }

    pub fn class(&self, color: Color) -> Vec<usize> {
        self.iter().filter(|&(_, c)| c == color).map(|(v, _)| v).collect()
    }

    pub fn class_size(&self, color: Color) -> usize {
        self.colors.values().filter(|&&c| c == color).count()
    }

    pub fn flipped(&self) -> TwoColoring {
        TwoColoring { colors: self.colors.iter().map(|(&v, &c)| (v, c.flip())).collect() }
    }

    pub fn is_bichromatic(&self, u: usize, v: usize) -> bool {
        matches!((self.color(u), self.color(v)), (Some(a), Some(b)) if a != b)
    }

    /// True iff every edge has both endpoints colored with distinct colors.
    pub fn is_proper_for(&self, edges: &[(usize, usize)]) -> bool {
        edges.iter().all(|&(u, v)| self.is_bichromatic(u, v))
    }

    /// Dense view over `0..n`; vertices outside the domain map to `None`.
    pub fn to_dense(&self, n: usize) -> Vec<Option<Color>> {
        let mut dense = vec![None; n];
        for (v, c) in self.iter() {
            if v < n {
                dense[v] = Some(c);
            }
        }
        dense
    }

    pub fn extend(&mut self, other: &TwoColoring) {
        self.colors.extend(other.colors.iter().map(|(&v, &c)| (v, c)));
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("certificate has no vertices")]
    Empty,
    #[error("edge ({0}, {1}) leaves the certificate's vertex set")]
    EdgeOutsideVertexSet(usize, usize),
    #[error("edge ({0}, {1}) is not an edge of the host graph")]
    NotAHostEdge(usize, usize),
    #[error("edge ({0}, {1}) is monochromatic")]
    Monochromatic(usize, usize),
    #[error("vertex {0} is not colored")]
    Uncolored(usize),
    #[error("certified subgraph is not {claimed}-connected")]
    NotConnectedEnough { claimed: usize },
}

/// A vertex subset with a bipartite edge set and its proper bipartition,
/// claimed to be `k`-connected. A single vertex without edges is the
/// degenerate certificate whose second color class is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteCertificate {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
    coloring: TwoColoring,
    k: usize,
}

impl BipartiteCertificate {
    /// Assembles a certificate, normalizing vertex and edge order. Only the
    /// structural invariants are checked here; connectivity is checked by
    /// [`BipartiteCertificate::verify`].
    pub fn new(
        mut vertices: Vec<usize>,
        edges: impl IntoIterator<Item = (usize, usize)>,
        coloring: TwoColoring,
        k: usize,
    ) -> Result<Self, CertificateError> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(CertificateError::Empty);
        }
        let mut edges: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        edges.dedup();
        for &(u, v) in &edges {
            if vertices.binary_search(&u).is_err() || vertices.binary_search(&v).is_err() {
                return Err(CertificateError::EdgeOutsideVertexSet(u, v));
            }
            if !coloring.is_bichromatic(u, v) {
                return Err(CertificateError::Monochromatic(u, v));
            }
        }
        if let Some(&v) = vertices.iter().find(|&&v| coloring.color(v).is_none()) {
            return Err(CertificateError::Uncolored(v));
        }
        let coloring = TwoColoring { colors: vertices.iter().map(|&v| (v, coloring.color(v).unwrap())).collect() };
        Ok(BipartiteCertificate { vertices, edges, coloring, k })
    }

    pub fn singleton(v: usize) -> Self {
        BipartiteCertificate {
            vertices: vec![v],
            edges: Vec::new(),
            coloring: TwoColoring::monochromatic([v], Color::Red),
            k: 0,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() == 1 && self.edges.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn coloring(&self) -> &TwoColoring {
        &self.coloring
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// The certified subgraph relabelled onto `0..len()` (labels follow the
    /// sorted vertex order), with the map back to host labels.
    pub fn local_graph(&self) -> (Graph, Vec<usize>) {
        let index = |v: usize| self.vertices.binary_search(&v).unwrap();
        let g = Graph::from_edges_unchecked(self.vertices.len(), self.edges.iter().map(|&(u, v)| (index(u), index(v))));
        (g, self.vertices.clone())
    }

    /// Checks every invariant against the host graph, including that the
    /// certified subgraph is `k`-connected (skipped for the degenerate case).
    pub fn verify(&self, host: &Graph) -> Result<(), CertificateError> {
        for &(u, v) in &self.edges {
            if u >= host.n() || v >= host.n() || !host.has_edge(u, v) {
                return Err(CertificateError::NotAHostEdge(u, v));
            }
            if !self.coloring.is_bichromatic(u, v) {
                return Err(CertificateError::Monochromatic(u, v));
            }
        }
        if self.is_degenerate() {
            return Ok(());
        }
        let (local, _) = self.local_graph();
        if crate::connectivity::is_k_connected(&local, self.k).is_connected() {
            Ok(())
        } else {
            Err(CertificateError::NotConnectedEnough { claimed: self.k })
        }
    }

    /// True iff the vertex set is exactly `0..n`.
    pub fn is_spanning(&self, n: usize) -> bool {
        self.vertices.len() == n && self.vertices.iter().enumerate().all(|(i, &v)| i == v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_collapses_duplicates() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(Graph::new(5, &Graph::complete(5).edge_list()).unwrap().m(), 10);
        let g = Graph::new(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.neighbors(0), &[1]);
    }

    #[test]
    fn build_rejects_bad_pairs() {
        assert_eq!(
            Graph::new(3, &[(0, 1), (1, 3)]),
            Err(GraphError::VertexOutOfRange { index: 1, u: 1, v: 3, n: 3 })
        );
        assert_eq!(Graph::new(3, &[(2, 2)]), Err(GraphError::SelfLoop { index: 0, v: 2 }));
    }

    #[test]
    fn induced_examples() {
        let (k3, map) = Graph::complete(4).induced_subgraph(&[0, 1, 2]);
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(map, vec![0, 1, 2]);

        let (h, map) = Graph::cycle(5).induced_subgraph(&[0, 1, 3]);
        assert_eq!(h.edge_list(), vec![(0, 1)]);
        assert_eq!(map, vec![0, 1, 3]);

        let (empty, _) = Graph::cycle(5).induced_subgraph(&[]);
        assert_eq!(empty.n(), 0);
    }

    #[test]
    fn petersen_outer_cycle_induces_c5() {
        // Edges of the Petersen graph inside {0..5}: only the outer cycle.
        let p = Graph::petersen();
        assert_eq!(p.m(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
        let (h, _) = p.induced_subgraph(&[0, 1, 2, 3, 4]);
        assert_eq!(h, Graph::cycle(5));
        let (h, _) = p.induced_subgraph(&[5, 6, 7, 8, 9]);
        assert_eq!(h.m(), 5);
        assert!((0..5).all(|v| h.degree(v) == 2));
    }

    #[test]
    fn underlying_examples() {
        let d = Digraph::new(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(d.arc_count(), 2);
        assert_eq!(d.underlying().edge_list(), vec![(0, 1)]);
        assert_eq!(Digraph::new(4, &[]).unwrap().underlying().m(), 0);
        let tri = Digraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(tri.underlying(), Graph::complete(3));
    }

    #[test]
    fn bichromatic_examples() {
        use Color::*;
        let col = TwoColoring::from_slice(&[Red, Red, Blue, Blue]);
        let h = Graph::complete(4).bichromatic_subgraph(&col);
        assert_eq!(h.edge_list(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);

        let mono = TwoColoring::monochromatic(0..6, Blue);
        assert_eq!(Graph::complete(6).bichromatic_subgraph(&mono).m(), 0);

        let col = TwoColoring::from_slice(&[Red, Blue, Red, Blue, Red]);
        let h = Graph::cycle(5).bichromatic_subgraph(&col);
        assert_eq!(h.edge_list(), vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn certificate_rejects_monochromatic_edge() {
        let col = TwoColoring::monochromatic([0, 1], Color::Red);
        assert_eq!(
            BipartiteCertificate::new(vec![0, 1], [(0, 1)], col, 1),
            Err(CertificateError::Monochromatic(0, 1))
        );
    }

    #[test]
    fn singleton_certificate_is_degenerate_and_valid() {
        let cert = BipartiteCertificate::singleton(3);
        assert!(cert.is_degenerate());
        assert_eq!(cert.coloring().class_size(Color::Blue), 0);
        cert.verify(&Graph::complete(4)).unwrap();
    }
}
