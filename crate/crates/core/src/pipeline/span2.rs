//! Spanning bipartite 2-connected subgraphs of 3-connected graphs, grown
//! from an even cycle by adding ears.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::connectivity::{disjoint_paths, is_k_connected, KConnectivity, SeparatorWitness};
use crate::graph::{components, BipartiteCertificate, Color, Graph, TwoColoring};

#[derive(Debug, Error, Clone, PartialEq, Serialize)]
pub enum Span2Error {
    #[error("the graph is not 3-connected")]
    NotThreeConnected { witness: Option<SeparatorWitness> },
    #[error("no ear leaves the outside component starting at {component_min}; its attachments separate it")]
    Stalled { component_min: usize, separator: Vec<usize> },
    #[error("result failed verification: {0}")]
    Verification(String),
}

/// Even cycle through vertex 0: two of three internally disjoint paths
/// between 0 and another vertex have equal length parity.
fn even_cycle(g: &Graph) -> Option<Vec<usize>> {
    let a = 0;
    // Prefer a non-neighbor; in a complete graph any vertex works with the
    // direct edge as one of the three paths.
    let b = (1..g.n()).find(|&b| !g.has_edge(a, b)).unwrap_or(1);
    let search = disjoint_paths(g, a, b, 3, false).ok()?;
    let paths = search.system.paths;
    if paths.len() < 3 {
        return None;
    }
    for i in 0..paths.len() {
        for j in i + 1..paths.len() {
            if paths[i].len() % 2 == paths[j].len() % 2 {
                // Walk a -> b along path i, then back along path j.
                let mut cycle = paths[i].clone();
                let back = &paths[j];
                cycle.extend(back[1..back.len() - 1].iter().rev());
                return Some(cycle);
            }
        }
    }
    None
}

struct Grower<'g> {
    g: &'g Graph,
    color: Vec<Option<Color>>,
    edges: Vec<(usize, usize)>,
}

impl Grower<'_> {
    fn add_path(&mut self, path: &[usize], first: Color) {
        let mut c = first;
        for (idx, &v) in path.iter().enumerate() {
            match self.color[v] {
                Some(existing) => debug_assert_eq!(existing, c, "ear endpoint color mismatch at {v}"),
                None => self.color[v] = Some(c),
            }
            if idx + 1 < path.len() {
                let w = path[idx + 1];
                self.edges.push((v.min(w), v.max(w)));
            }
            c = c.flip();
        }
    }

    fn in_h(&self, v: usize) -> bool {
        self.color[v].is_some()
    }

    /// Finds one ear through the outside component `comp`, or returns the
    /// distinct attachment vertices when there is none.
    fn ear(&self, comp: &[usize]) -> Result<Vec<usize>, Vec<usize>> {
        let n = self.g.n();
        let mut inside = vec![false; n];
        for &v in comp {
            inside[v] = true;
        }
        let root = comp[0];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut order = Vec::with_capacity(comp.len());
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in self.g.neighbors(v) {
                if inside[u] && !seen[u] {
                    seen[u] = true;
                    parent[u] = v;
                    depth[u] = depth[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        // For each key, the first (x, a) attachment seen with that key.
        let mut first: [Option<(usize, usize)>; 2] = [None, None];
        let mut attachments = Vec::new();
        let mut sorted = order;
        sorted.sort_unstable();
        for &x in &sorted {
            for &a in self.g.neighbors(x) {
                let Some(ca) = self.color[a] else { continue };
                attachments.push(a);
                let key = (depth[x] % 2) ^ ca.bit() as usize;
                match first[key] {
                    None => first[key] = Some((x, a)),
                    Some((y, b)) if b != a => return Ok(self.ear_path(b, y, x, a, &parent, &depth)),
                    Some(_) => {}
                }
            }
        }
        attachments.sort_unstable();
        attachments.dedup();
        Err(attachments)
    }

    fn ear_path(&self, a: usize, x: usize, y: usize, b: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
        let (mut p, mut q) = (x, y);
        let mut left = vec![p];
        let mut right = vec![q];
        while p != q {
            if depth[p] >= depth[q] {
                p = parent[p];
                left.push(p);
            } else {
                q = parent[q];
                right.push(q);
            }
        }
        right.pop();
        let mut path = vec![a];
        path.extend(left);
        path.extend(right.into_iter().rev());
        path.push(b);
        path
    }
}

/// A spanning bipartite 2-connected subgraph of a 3-connected graph.
pub fn span2connected(g: &Graph) -> Result<BipartiteCertificate, Span2Error> {
    match is_k_connected(g, 3) {
        KConnectivity::Connected => {}
        KConnectivity::Separated(w) => return Err(Span2Error::NotThreeConnected { witness: Some(w) }),
        KConnectivity::TooFewVertices { .. } => return Err(Span2Error::NotThreeConnected { witness: None }),
    }
    let cycle = even_cycle(g).ok_or_else(|| Span2Error::Verification("no even cycle found".into()))?;
    let mut grower = Grower { g, color: vec![None; g.n()], edges: Vec::new() };
    let mut closed = cycle.clone();
    closed.push(cycle[0]);
    grower.add_path(&closed, Color::Red);
    loop {
        let taken: Vec<usize> = (0..g.n()).filter(|&v| grower.in_h(v)).collect();
        let outside = components(g, &taken);
        let Some(comp) = outside.first() else { break };
        match grower.ear(comp) {
            Ok(path) => {
                let first = grower.color[path[0]].unwrap();
                grower.add_path(&path, first);
            }
            Err(separator) => {
                return Err(Span2Error::Stalled { component_min: comp[0], separator });
            }
        }
    }
    let mut coloring = TwoColoring::new();
    for (v, c) in grower.color.iter().enumerate() {
        coloring.set(v, c.expect("every vertex is covered"));
    }
    let cert = BipartiteCertificate::new((0..g.n()).collect(), grower.edges, coloring, 2)
        .map_err(|e| Span2Error::Verification(e.to_string()))?;
    cert.verify(g).map_err(|e| Span2Error::Verification(e.to_string()))?;
    Ok(cert)
}
