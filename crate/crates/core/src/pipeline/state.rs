use serde::Serialize;
use thiserror::Error;

use crate::graph::{BipartiteCertificate, Graph};
use crate::matching::{max_matching_between, PartitionView};
use crate::merge::{absorb_vertex, union_parts, MergeError, MergePlan};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateError {
    #[error("the graph has no vertices")]
    EmptyGraph,
}

/// A partition of `V(G)` into parts, each carrying its certificate. Parts
/// are kept ordered by their smallest vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionState {
    certs: Vec<BipartiteCertificate>,
    #[serde(skip)]
    part_of: Vec<usize>,
}

/// A committed local merge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalMerge {
    pub parts: Vec<usize>,
    pub vertex: Option<usize>,
    pub plan: MergePlan,
}

pub fn init_partition(g: &Graph) -> Result<PartitionState, StateError> {
    if g.n() == 0 {
        return Err(StateError::EmptyGraph);
    }
    Ok(PartitionState::from_certificates(g.n(), (0..g.n()).map(BipartiteCertificate::singleton).collect()))
}

impl PartitionState {
    /// Builds a state from certificates that partition `0..n`.
    pub fn from_certificates(n: usize, mut certs: Vec<BipartiteCertificate>) -> Self {
        certs.sort_by_key(|c| c.vertices()[0]);
        let mut part_of = vec![usize::MAX; n];
        for (i, c) in certs.iter().enumerate() {
            for &v in c.vertices() {
                part_of[v] = i;
            }
        }
        debug_assert!(part_of.iter().all(|&p| p != usize::MAX));
        PartitionState { certs, part_of }
    }

    pub fn t(&self) -> usize {
        self.certs.len()
    }

    pub fn t_star(&self) -> usize {
        self.certs.iter().filter(|c| c.len() > 1).count()
    }

    pub fn part(&self, i: usize) -> &[usize] {
        self.certs[i].vertices()
    }

    pub fn certificate(&self, i: usize) -> &BipartiteCertificate {
        &self.certs[i]
    }

    pub fn certificates(&self) -> &[BipartiteCertificate] {
        &self.certs
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn is_singleton(&self, i: usize) -> bool {
        self.certs[i].len() == 1
    }

    pub fn part_slices(&self) -> Vec<&[usize]> {
        self.certs.iter().map(|c| c.vertices()).collect()
    }

    /// Runs `f` with a matching-module view of this partition.
    pub fn with_view<R>(&self, f: impl FnOnce(PartitionView<'_>) -> R) -> R {
        let slices = self.part_slices();
        f(PartitionView { parts: &slices, part_of: &self.part_of })
    }

    pub fn into_certificates(self) -> Vec<BipartiteCertificate> {
        self.certs
    }

    /// Replaces the parts in `merged` with `cert`.
    pub fn replace(&mut self, merged: &[usize], cert: BipartiteCertificate) {
        let n = self.part_of.len();
        let mut drop = vec![false; self.certs.len()];
        for &i in merged {
            drop[i] = true;
        }
        let mut certs: Vec<BipartiteCertificate> = std::mem::take(&mut self.certs)
            .into_iter()
            .enumerate()
            .filter_map(|(i, c)| (!drop[i]).then_some(c))
            .collect();
        certs.push(cert);
        *self = PartitionState::from_certificates(n, certs);
    }
}

/// Absorbs the lowest singleton that has `2k - 1` neighbors inside one
/// non-singleton part (lowest such part first).
pub fn try_rule_absorb(g: &Graph, state: &mut PartitionState, k: usize) -> Result<Option<LocalMerge>, MergeError> {
    if state.t_star() == 0 {
        return Ok(None);
    }
    let need = (2 * k).saturating_sub(1).max(1);
    let mut count = vec![0usize; state.t()];
    for i in 0..state.t() {
        if !state.is_singleton(i) {
            continue;
        }
        let v = state.part(i)[0];
        let mut touched = Vec::new();
        for &u in g.neighbors(v) {
            let j = state.part_of(u);
            if !state.is_singleton(j) {
                if count[j] == 0 {
                    touched.push(j);
                }
                count[j] += 1;
            }
        }
        touched.sort_unstable();
        let target = touched.iter().copied().find(|&j| count[j] >= need);
        for &j in &touched {
            count[j] = 0;
        }
        if let Some(j) = target {
            let edges: Vec<(usize, usize)> =
                g.neighbors(v).iter().copied().filter(|&u| state.part_of(u) == j).map(|u| (v, u)).collect();
            let (cert, plan) = absorb_vertex(state.certificate(j), v, &edges, k)?;
            let merged = vec![i.min(j), i.max(j)];
            state.replace(&merged, cert);
            return Ok(Some(LocalMerge { parts: merged, vertex: Some(v), plan }));
        }
    }
    Ok(None)
}

/// Unions the lowest pair of non-singleton parts joined by `2k - 1`
/// pairwise disjoint edges.
pub fn try_rule_union(g: &Graph, state: &mut PartitionState, k: usize) -> Result<Option<LocalMerge>, MergeError> {
    let need = (2 * k).saturating_sub(1).max(1);
    let big: Vec<usize> = (0..state.t()).filter(|&i| !state.is_singleton(i)).collect();
    for (a, &i) in big.iter().enumerate() {
        for &j in &big[a + 1..] {
            // Cheap necessary test before the matching.
            let cross = state.part(i).iter().filter(|&&v| g.neighbors(v).iter().any(|&u| state.part_of(u) == j)).count();
            if cross < need {
                continue;
            }
            let m = max_matching_between(g, state.part(i), state.part(j));
            if m.len() >= need {
                let (cert, plan) = union_parts(state.certificate(i), state.certificate(j), &m.edges, k)?;
                state.replace(&[i, j], cert);
                return Ok(Some(LocalMerge { parts: vec![i, j], vertex: None, plan }));
            }
        }
    }
    Ok(None)
}
