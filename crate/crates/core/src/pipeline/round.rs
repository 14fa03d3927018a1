use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::connectivity::{is_k_connected, KConnectivity, SeparatorWitness};
use crate::graph::{BipartiteCertificate, Color, Digraph, Graph, TwoColoring};
use crate::matching::{build_representatives, RepresentativeError, RepresentativeRules, RepresentativeSet};
use crate::peel::PeelResult;

use super::state::PartitionState;

/// One orientation bit per part for global attempt `attempt`: a ChaCha8
/// generator seeded with `seed`, switched to stream `attempt`, yields one
/// `u32` per part in part order and the low bit is used.
pub fn orientation_bits(seed: u64, attempt: u64, parts: usize) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt);
    (0..parts).map(|_| rng.next_u32() & 1 == 1).collect()
}

/// Representative sets of every part, computed in parallel.
pub fn build_all_representatives(
    g: &Graph,
    state: &PartitionState,
    rules: &RepresentativeRules,
) -> Result<Vec<RepresentativeSet>, RepresentativeError> {
    state.with_view(|view| (0..state.t()).into_par_iter().map(|i| build_representatives(g, view, i, rules)).collect())
}

/// An accepted (or rejected) coloring sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MergeRound {
    pub attempt: u64,
    pub orientation: Vec<bool>,
    #[serde(skip)]
    pub colors: Vec<Color>,
    /// `T_i`: the bichromatic edges of `S_i`, as `(inside, outside)`.
    pub t_sets: Vec<Vec<(usize, usize)>>,
    pub s_sizes: Vec<usize>,
    pub retries_used: usize,
}

impl MergeRound {
    /// `4 |T_i| >= |S_i|` for every part.
    pub fn accepted(&self) -> bool {
        self.t_sets.iter().zip(&self.s_sizes).all(|(t, &s)| 4 * t.len() >= s)
    }

    pub fn t_sizes(&self) -> Vec<usize> {
        self.t_sets.iter().map(Vec::len).collect()
    }
}

/// Colors every part by its certificate, flipped where the bit is set, and
/// keeps the bichromatic representative edges.
pub fn sample_round(state: &PartitionState, reps: &[RepresentativeSet], orientation: Vec<bool>, attempt: u64) -> MergeRound {
    let n: usize = state.certificates().iter().map(|c| c.len()).sum();
    let mut colors = vec![Color::Red; n];
    for (i, cert) in state.certificates().iter().enumerate() {
        for (v, c) in cert.coloring().iter() {
            colors[v] = if orientation[i] { c.flip() } else { c };
        }
    }
    let t_sets = reps
        .iter()
        .map(|r| r.edges.iter().copied().filter(|&(u, w)| colors[u] != colors[w]).collect())
        .collect();
    MergeRound {
        attempt,
        orientation,
        colors,
        t_sets,
        s_sizes: reps.iter().map(RepresentativeSet::len).collect(),
        retries_used: 0,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Serialize)]
pub enum RoundError {
    #[error("no accepted coloring within {attempts} attempts")]
    RetryExhausted { attempts: usize },
}

/// Samples colorings until every `|T_i| >= |S_i| / 4`, drawing attempts
/// `first_attempt, first_attempt + 1, ...` and giving up after `cap` failures.
pub fn coloring_round(
    state: &PartitionState,
    reps: &[RepresentativeSet],
    seed: u64,
    first_attempt: u64,
    cap: usize,
) -> Result<MergeRound, RoundError> {
    for retry in 0..=cap {
        let attempt = first_attempt + retry as u64;
        let mut round = sample_round(state, reps, orientation_bits(seed, attempt, state.t()), attempt);
        if round.accepted() {
            round.retries_used = retry;
            return Ok(round);
        }
    }
    Err(RoundError::RetryExhausted { attempts: cap + 1 })
}

/// Arc `(i, j)` whenever `T_i` reaches part `j`.
pub fn part_digraph(round: &MergeRound, state: &PartitionState) -> Digraph {
    let arcs: Vec<(usize, usize)> = round
        .t_sets
        .iter()
        .enumerate()
        .flat_map(|(i, t)| t.iter().map(move |&(_, w)| (i, w)))
        .map(|(i, w)| (i, state.part_of(w)))
        .collect();
    Digraph::new(state.t(), &arcs).expect("representative edges leave their part")
}

#[derive(Debug, Error, Clone, PartialEq, Serialize)]
pub enum MegaMergeError {
    #[error("merged graph has {size} vertices, below d = {d}")]
    TooSmall { size: usize, d: usize },
    #[error("merged coloring is not proper: {0}")]
    NotBipartite(String),
    #[error("merged graph is not {k}-connected")]
    NotConnected { k: usize, witness: Option<SeparatorWitness> },
    #[error("part {part}: |T*| = {t_star} but the out-degree in D' is {out}")]
    DegreeMismatch { part: usize, t_star: usize, out: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MegaMerge {
    pub merged_parts: Vec<usize>,
    pub t_star_sizes: Vec<usize>,
    pub certificate: BipartiteCertificate,
}

/// Union of the surviving certificates and their `T*` edges under the
/// round's coloring, checked for size, properness and `k`-connectivity.
pub fn mega_merge(
    state: &PartitionState,
    round: &MergeRound,
    peel: &PeelResult,
    k: usize,
    min_size: Option<usize>,
) -> Result<MegaMerge, MegaMergeError> {
    let mut alive = vec![false; state.t()];
    for &i in &peel.survivors {
        alive[i] = true;
    }
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut t_star_sizes = Vec::with_capacity(peel.survivors.len());
    for (pos, &i) in peel.survivors.iter().enumerate() {
        let cert = state.certificate(i);
        vertices.extend_from_slice(cert.vertices());
        edges.extend_from_slice(cert.edges());
        let before = edges.len();
        edges.extend(round.t_sets[i].iter().copied().filter(|&(_, w)| alive[state.part_of(w)]));
        let t_star = edges.len() - before;
        let out = peel.d_prime.out_degree(pos);
        if t_star != out {
            return Err(MegaMergeError::DegreeMismatch { part: i, t_star, out });
        }
        t_star_sizes.push(t_star);
    }
    if let Some(d) = min_size {
        if vertices.len() < d {
            return Err(MegaMergeError::TooSmall { size: vertices.len(), d });
        }
    }
    let mut coloring = TwoColoring::new();
    for &v in &vertices {
        coloring.set(v, round.colors[v]);
    }
    let cert = BipartiteCertificate::new(vertices, edges, coloring, k).map_err(|e| MegaMergeError::NotBipartite(e.to_string()))?;
    let (local, labels) = cert.local_graph();
    match is_k_connected(&local, k) {
        KConnectivity::Connected => {}
        KConnectivity::TooFewVertices { .. } => return Err(MegaMergeError::NotConnected { k, witness: None }),
        KConnectivity::Separated(w) => {
            let witness = SeparatorWitness {
                vertices: w.vertices.iter().map(|&v| labels[v]).collect(),
                side_small: w.side_small.iter().map(|&v| labels[v]).collect(),
            };
            return Err(MegaMergeError::NotConnected { k, witness: Some(witness) });
        }
    }
    Ok(MegaMerge { merged_parts: peel.survivors.clone(), t_star_sizes, certificate: cert })
}
