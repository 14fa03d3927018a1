//! Partition refinement towards a spanning bipartite `k`-connected subgraph.
//!
//! The state is a partition whose non-singleton parts carry bipartite
//! `k`-connected certificates. Each iteration first applies the two local
//! rules (absorb a singleton, union two parts) and, when neither applies,
//! one global round: representative edges per part, a random orientation
//! of every part's bipartition, the part digraph of surviving edges, a peel
//! of that digraph and a merge of every surviving part into one.

mod params;
mod round;
mod span2;
mod state;

use std::collections::VecDeque;
use std::time::Instant;

use serde::Serialize;

pub use params::{params_for, regime_a_threshold, retry_cap_for, Mode, ParamsError, PipelineParams, Regime};
pub use round::{
    build_all_representatives, coloring_round, mega_merge, orientation_bits, part_digraph, sample_round, MegaMerge,
    MegaMergeError, MergeRound, RoundError,
};
pub use span2::{span2connected, Span2Error};
pub use state::{init_partition, try_rule_absorb, try_rule_union, LocalMerge, PartitionState, StateError};

use crate::connectivity::SeparatorWitness;
use crate::graph::{BipartiteCertificate, Color, Graph, TwoColoring};
use crate::matching::{RepresentativeError, RepresentativeRules};
use crate::peel::{peel_linear, peel_log, peel_with, KeepRule, PeelError, PeelResult};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Success { certificate: BipartiteCertificate },
    /// The input does not meet the run's assumptions; `witness`, when
    /// present, is a separator smaller than the threshold.
    PreconditionViolation { reason: String, witness: Option<SeparatorWitness> },
    RetryExhausted { round: usize, attempts: usize },
    /// A guarantee that should follow from the thresholds did not hold.
    InternalFailure { reason: String, round: Option<RoundSummary> },
    /// Opportunistic mode only: no rule can make progress.
    Stalled { t: usize, reason: String },
}

impl Outcome {
    pub fn is_success(&self) -> bool {
        matches!(self, Outcome::Success { .. })
    }

    pub fn certificate(&self) -> Option<&BipartiteCertificate> {
        match self {
            Outcome::Success { certificate } => Some(certificate),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundSummary {
    pub t: usize,
    pub attempt: u64,
    pub s_sizes: Vec<usize>,
    pub t_sizes: Vec<usize>,
    pub survivors: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Stats {
    pub rounds: usize,
    pub absorb_merges: usize,
    pub union_merges: usize,
    pub mega_merges: usize,
    /// Rejected samples (and, in opportunistic mode, failed peels or merges) per round.
    pub retries_per_round: Vec<usize>,
    pub attempts: u64,
    pub peel_steps: usize,
    /// Only filled when timing is requested; excluded otherwise so output is reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Stats {
    pub fn total_retries(&self) -> usize {
        self.retries_per_round.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineResult {
    pub outcome: Outcome,
    pub stats: Stats,
}

impl PipelineResult {
    pub fn is_success(&self) -> bool {
        self.outcome.is_success()
    }
}

/// BFS spanning tree colored by depth parity.
pub fn spanning_tree_certificate(g: &Graph) -> Option<BipartiteCertificate> {
    let n = g.n();
    if n == 0 || !g.is_connected() {
        return None;
    }
    let mut color = vec![None; n];
    let mut edges = Vec::with_capacity(n - 1);
    color[0] = Some(Color::Red);
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        let cv: Color = color[v].unwrap();
        for &u in g.neighbors(v) {
            if color[u].is_none() {
                color[u] = Some(cv.flip());
                edges.push((v, u));
                queue.push_back(u);
            }
        }
    }
    let coloring = TwoColoring::from_slice(&color.into_iter().map(Option::unwrap).collect::<Vec<_>>());
    BipartiteCertificate::new((0..n).collect(), edges, coloring, 1).ok()
}

fn neighborhood_witness(g: &Graph, v: usize) -> Option<SeparatorWitness> {
    SeparatorWitness::new(g, g.neighbors(v).to_vec())
}

/// Runs the construction and returns a verified spanning certificate or a
/// diagnostic.
pub fn run(g: &Graph, params: &PipelineParams) -> PipelineResult {
    run_timed(g, params, false)
}

pub fn run_timed(g: &Graph, params: &PipelineParams, timed: bool) -> PipelineResult {
    let start = Instant::now();
    let mut stats = Stats::default();
    let outcome = run_inner(g, params, &mut stats);
    let outcome = match outcome {
        Outcome::Success { certificate } => match certificate.verify(g) {
            Ok(()) if certificate.is_spanning(g.n()) => Outcome::Success { certificate },
            Ok(()) => Outcome::InternalFailure { reason: "certificate is not spanning".into(), round: None },
            Err(e) => Outcome::InternalFailure { reason: format!("final verification failed: {e}"), round: None },
        },
        other => other,
    };
    if timed {
        stats.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    PipelineResult { outcome, stats }
}

fn representative_failure(g: &Graph, params: &PipelineParams, state: &PartitionState, err: RepresentativeError) -> Outcome {
    let strict = params.is_strict();
    match err {
        RepresentativeError::MatchingTooSmall { separator: Some(w), size, part, .. } if strict => Outcome::PreconditionViolation {
            reason: format!("part {part} has a cut matching of only {size} edges; its cover separates the graph"),
            witness: Some(w),
        },
        RepresentativeError::BelowBound { part, .. } | RepresentativeError::BetaSingleton { part, .. }
            if strict && state.is_singleton(part) && g.degree(state.part(part)[0]) < params.s =>
        {
            let v = state.part(part)[0];
            Outcome::PreconditionViolation {
                reason: format!("vertex {v} has degree {} < s = {}", g.degree(v), params.s),
                witness: neighborhood_witness(g, v),
            }
        }
        other => Outcome::InternalFailure { reason: other.to_string(), round: None },
    }
}

fn run_inner(g: &Graph, params: &PipelineParams, stats: &mut Stats) -> Outcome {
    let n = g.n();
    let k = params.k;
    if n == 0 {
        return Outcome::PreconditionViolation { reason: "empty graph".into(), witness: None };
    }
    if n == 1 {
        return Outcome::Success { certificate: BipartiteCertificate::singleton(0) };
    }
    if k == 0 || 2 * k > n {
        return Outcome::PreconditionViolation {
            reason: format!("k = {k} is outside 1..=n/2 for n = {n}; a bipartite graph on n vertices has connectivity at most n/2"),
            witness: None,
        };
    }
    if k == 1 {
        return match spanning_tree_certificate(g) {
            Some(certificate) => Outcome::Success { certificate },
            None => Outcome::PreconditionViolation {
                reason: "graph is disconnected".into(),
                witness: SeparatorWitness::new(g, Vec::new()),
            },
        };
    }
    let strict = params.is_strict();
    if strict {
        if !params.feasible {
            return Outcome::PreconditionViolation {
                reason: format!("threshold s = {} is not attainable on {n} vertices: {}", params.s, params.notes.join("; ")),
                witness: None,
            };
        }
        let v = g.min_degree_vertex().unwrap();
        if g.degree(v) < params.s {
            return Outcome::PreconditionViolation {
                reason: format!("vertex {v} has degree {} < s = {}", g.degree(v), params.s),
                witness: neighborhood_witness(g, v),
            };
        }
    }
    let rules = RepresentativeRules { regime: params.regime, k, s: params.s, d: params.d, enforce_bounds: strict };
    let mut state = init_partition(g).expect("n > 0");
    let mut attempt: u64 = 0;
    while state.t() > 1 {
        match try_rule_absorb(g, &mut state, k) {
            Ok(Some(_)) => {
                stats.absorb_merges += 1;
                continue;
            }
            Ok(None) => {}
            Err(e) => return Outcome::InternalFailure { reason: format!("absorb: {e}"), round: None },
        }
        match try_rule_union(g, &mut state, k) {
            Ok(Some(_)) => {
                stats.union_merges += 1;
                continue;
            }
            Ok(None) => {}
            Err(e) => return Outcome::InternalFailure { reason: format!("union: {e}"), round: None },
        }
        if !strict && state.t() <= k {
            return Outcome::Stalled {
                t: state.t(),
                reason: format!("{} parts left and no local rule applies; a global round needs at least k + 1", state.t()),
            };
        }
        let reps = match build_all_representatives(g, &state, &rules) {
            Ok(r) => r,
            Err(e) => return representative_failure(g, params, &state, e),
        };
        if !strict && reps.iter().all(|r| r.is_empty()) {
            return Outcome::Stalled { t: state.t(), reason: "every representative set is empty".into() };
        }
        stats.rounds += 1;
        let cap = params.retry_cap.unwrap_or_else(|| retry_cap_for(state.t()));
        let mut failures = 0usize;
        let merged = loop {
            if failures > cap {
                return Outcome::RetryExhausted { round: stats.rounds, attempts: failures };
            }
            let this = attempt;
            attempt += 1;
            stats.attempts += 1;
            let round = sample_round(&state, &reps, orientation_bits(params.seed, this, state.t()), this);
            if !round.accepted() {
                failures += 1;
                continue;
            }
            let summary = |survivors: Option<Vec<usize>>| RoundSummary {
                t: state.t(),
                attempt: this,
                s_sizes: round.s_sizes.clone(),
                t_sizes: round.t_sizes(),
                survivors,
            };
            let digraph = part_digraph(&round, &state);
            let peeled: Result<PeelResult, PeelError> = if strict {
                match params.regime {
                    Regime::C => peel_linear(&digraph, params.c.unwrap_or(0.0), n),
                    _ => peel_log(&digraph, k, n),
                }
            } else {
                peel_with(&digraph, k, usize::MAX, KeepRule::Smallest)
                    .or_else(|_| peel_with(&digraph, k, usize::MAX, KeepRule::Largest))
            };
            let peeled = match peeled {
                Ok(p) => p,
                Err(e) if strict => {
                    return Outcome::InternalFailure { reason: format!("peel: {e}"), round: Some(summary(None)) };
                }
                Err(_) => {
                    failures += 1;
                    continue;
                }
            };
            let min_size = strict.then_some(params.d);
            match mega_merge(&state, &round, &peeled, k, min_size) {
                Ok(m) => {
                    stats.peel_steps += peeled.steps();
                    break m;
                }
                Err(e) if strict => {
                    return Outcome::InternalFailure {
                        reason: format!("merge: {e}"),
                        round: Some(summary(Some(peeled.survivors.clone()))),
                    };
                }
                Err(_) => {
                    failures += 1;
                    continue;
                }
            }
        };
        stats.retries_per_round.push(failures);
        stats.mega_merges += 1;
        state.replace(&merged.merged_parts, merged.certificate);
    }
    let certificate = state.into_certificates().pop().unwrap();
    Outcome::Success { certificate }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_k1() {
        let g = Graph::path(2);
        let p = params_for(1, 2, Regime::A, None).unwrap();
        let r = run(&g, &p);
        assert!(r.is_success());
        assert_eq!(r.outcome.certificate().unwrap().edges(), &[(0, 1)]);
    }

    #[test]
    fn c5_opportunistic_fails_cleanly() {
        let g = Graph::cycle(5);
        let r = run(&g, &PipelineParams::opportunistic(&g, 2));
        assert!(!r.is_success());
    }

    #[test]
    fn complete_graph_opportunistic_k2_k3() {
        for (n, k) in [(12, 2), (12, 3), (30, 3), (40, 4)] {
            let g = Graph::complete(n);
            let r = run(&g, &PipelineParams::opportunistic(&g, k).with_seed(3));
            assert!(r.is_success(), "n={n} k={k}: {:?}", r.outcome);
        }
    }

    #[test]
    fn strict_mode_reports_low_degree() {
        let g = Graph::cycle(1024);
        let p = params_for(2, 1024, Regime::A, None).unwrap();
        match run(&g, &p).outcome {
            Outcome::PreconditionViolation { witness: Some(w), .. } => assert!(w.is_valid_for(&g)),
            other => panic!("{other:?}"),
        }
    }
}
