//! Seeded experiment harnesses. Every record is a pure function of its
//! inputs and seed; wall time is only filled in on request.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::connectivity::{disjoint_paths, edge_connectivity, min_edge_cut};
use crate::gen::{gnp_with_min_degree, p_for_min_degree, rng, trial_seed};
use crate::graph::{Color, Graph, TwoColoring};
use crate::pipeline::{params_for, run_timed, Outcome, PipelineParams, Regime};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub descriptor: String,
    pub edge_connectivity: Option<usize>,
    pub target: Option<usize>,
    pub pair: Option<(usize, usize)>,
    pub surviving_paths: Option<usize>,
    pub total_paths: Option<usize>,
    pub retries: Option<usize>,
    pub success: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

/// Uniform random `r`-coloring; keeps the edges whose ends differ, then
/// measures edge connectivity against `floor(c n)` and counts how many of a
/// maximum family of internally disjoint paths (length >= 2) between a
/// random pair keep all their edges.
pub fn rcolor_trial(g: &Graph, r: usize, c: f64, seed: u64) -> TrialRecord {
    let n = g.n();
    let mut rng = rng(seed);
    let colors: Vec<usize> = (0..n).map(|_| rng.gen_range(0..r.max(1))).collect();
    let kept = g.properly_colored_subgraph(&colors);
    let lambda = edge_connectivity(&kept);
    let target = (c * n as f64).floor() as usize;
    let (pair, surviving, total) = if n >= 2 {
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        let paths = disjoint_paths(g, a, b, usize::MAX, true).expect("distinct in-range pair").system.paths;
        let alive = paths.iter().filter(|p| p.windows(2).all(|w| colors[w[0]] != colors[w[1]])).count();
        (Some((a, b)), Some(alive), Some(paths.len()))
    } else {
        (None, None, None)
    };
    TrialRecord {
        seed,
        descriptor: format!("n={n} m={} r={r} c={c}", g.m()),
        edge_connectivity: Some(lambda),
        target: Some(target),
        pair,
        surviving_paths: surviving,
        total_paths: total,
        retries: None,
        success: lambda >= target,
        wall_ms: None,
    }
}

/// `trials` independent `rcolor_trial`s with seeds derived from `master`.
pub fn rcolor_batch(g: &Graph, r: usize, c: f64, trials: usize, master: u64) -> Vec<TrialRecord> {
    (0..trials).into_par_iter().map(|i| rcolor_trial(g, r, c, trial_seed(master, i as u64))).collect()
}

pub fn success_rate(records: &[TrialRecord]) -> f64 {
    if records.is_empty() {
        return 0.0;
    }
    records.iter().filter(|r| r.success).count() as f64 / records.len() as f64
}

/// Local-search cut from a random start. Two moves, each applied only when
/// it enlarges the cut: flip the lowest-labelled vertex with more neighbors
/// on its own side, or flip one whole side of a minimum edge cut of the
/// current cut graph.
pub fn local_max_cut(g: &Graph, seed: u64) -> TwoColoring {
    let n = g.n();
    let mut rng = rng(seed);
    let mut side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    loop {
        let flip = (0..n).find(|&v| {
            let same = g.neighbors(v).iter().filter(|&&u| side[u] == side[v]).count();
            2 * same > g.degree(v)
        });
        if let Some(v) = flip {
            side[v] = !side[v];
            continue;
        }
        let coloring = TwoColoring::from_slice(&side.iter().map(|&b| Color::from_bit(b)).collect::<Vec<_>>());
        let (_, x) = min_edge_cut(&g.bichromatic_subgraph(&coloring));
        let mut in_x = vec![false; n];
        for &v in &x {
            in_x[v] = true;
        }
        let (mut same, mut cross) = (0, 0);
        for &v in &x {
            for &u in g.neighbors(v) {
                if !in_x[u] {
                    if side[u] == side[v] {
                        same += 1;
                    } else {
                        cross += 1;
                    }
                }
            }
        }
        if same <= cross {
            return coloring;
        }
        for v in x {
            side[v] = !side[v];
        }
    }
}

/// Edge connectivity of a locally maximal cut, compared with `k`; `success`
/// records whether the cut is `k`-edge-connected and the host's edge
/// connectivity is reported in `target` for the `2k - 1` premise.
pub fn maxcut_edge_conn(g: &Graph, k: usize, seed: u64) -> TrialRecord {
    let cut = local_max_cut(g, seed);
    let h = g.bichromatic_subgraph(&cut);
    let lambda = edge_connectivity(&h);
    TrialRecord {
        seed,
        descriptor: format!("n={} m={} k={k} host_lambda={}", g.n(), g.m(), edge_connectivity(g)),
        edge_connectivity: Some(lambda),
        target: Some(k),
        pair: None,
        surviving_paths: None,
        total_paths: None,
        retries: None,
        success: lambda >= k,
        wall_ms: None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub n: usize,
    pub k: usize,
    pub regime: Regime,
    pub s: usize,
    pub feasible: bool,
    /// Minimum degree the generated graphs were required to have.
    pub min_degree_target: usize,
    pub p: Option<f64>,
    pub trials: usize,
    pub generated: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub mean_retries: f64,
    pub max_retries: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_ms: Option<f64>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanConfig {
    pub k: usize,
    pub regime: Regime,
    pub alpha_or_c: Option<f64>,
    pub trials: usize,
    pub master_seed: u64,
    /// When the threshold is infeasible, graphs target this fraction of
    /// `n - 1` as minimum degree and run in opportunistic mode.
    pub fallback_fraction: f64,
    pub timed: bool,
}

/// Success rate of the pipeline on random graphs at the regime threshold
/// for each `n`.
pub fn fkn_scan(ns: &[usize], cfg: &ScanConfig) -> Vec<ScanRow> {
    ns.iter().map(|&n| scan_row(n, cfg)).collect()
}

fn scan_row(n: usize, cfg: &ScanConfig) -> ScanRow {
    let k = cfg.k;
    let params = match params_for(k, n, cfg.regime, cfg.alpha_or_c) {
        Ok(p) => p,
        Err(e) => {
            return ScanRow {
                n,
                k,
                regime: cfg.regime,
                s: 0,
                feasible: false,
                min_degree_target: 0,
                p: None,
                trials: cfg.trials,
                generated: 0,
                successes: 0,
                success_rate: 0.0,
                mean_retries: 0.0,
                max_retries: 0,
                mean_ms: None,
                note: format!("rejected: {e}"),
            }
        }
    };
    let target = if params.feasible { params.s } else { (cfg.fallback_fraction * (n - 1) as f64).floor() as usize };
    let p = p_for_min_degree(n, target);
    let results: Vec<Option<(bool, usize, f64)>> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(cfg.master_seed ^ (n as u64).rotate_left(32), i as u64);
            let mut r = rng(seed);
            let g = match p {
                Some(p) => gnp_with_min_degree(n, p, target, 20, &mut r)?,
                None => Graph::complete(n),
            };
            let run_params = if params.feasible {
                params.clone().with_seed(seed)
            } else {
                PipelineParams::opportunistic(&g, k).with_seed(seed)
            };
            let res = run_timed(&g, &run_params, cfg.timed);
            let ms = res.stats.elapsed_ms.unwrap_or(0.0);
            Some((matches!(res.outcome, Outcome::Success { .. }), res.stats.total_retries(), ms))
        })
        .collect();
    let done: Vec<(bool, usize, f64)> = results.into_iter().flatten().collect();
    let generated = done.len();
    let successes = done.iter().filter(|r| r.0).count();
    let mean = |f: &dyn Fn(&(bool, usize, f64)) -> f64| {
        if generated == 0 {
            0.0
        } else {
            done.iter().map(f).sum::<f64>() / generated as f64
        }
    };
    ScanRow {
        n,
        k,
        regime: cfg.regime,
        s: params.s,
        feasible: params.feasible,
        min_degree_target: target,
        p,
        trials: cfg.trials,
        generated,
        successes,
        success_rate: if generated == 0 { 0.0 } else { successes as f64 / generated as f64 },
        mean_retries: mean(&|r| r.1 as f64),
        max_retries: done.iter().map(|r| r.1).max().unwrap_or(0),
        mean_ms: cfg.timed.then(|| mean(&|r| r.2)),
        note: if params.feasible {
            String::new()
        } else {
            format!("infeasible threshold; opportunistic mode at minimum degree {target}: {}", params.notes.join("; "))
        },
    }
}

/// One pipeline run on a seeded `G(n, p)` sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusRun {
    pub seed: u64,
    pub min_degree: usize,
    pub status: String,
    pub success: bool,
    pub rounds: usize,
    pub retries_per_round: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

/// Runs `params` (with per-trial seeds) on `trials` samples of `G(n, p)`.
/// Returns each run's record and, for successes, the certificate.
pub fn gnp_corpus(
    p: f64,
    params: &PipelineParams,
    trials: usize,
    master: u64,
    timed: bool,
) -> Vec<(CorpusRun, Option<crate::graph::BipartiteCertificate>, Graph)> {
    (0..trials)
        .map(|i| {
            let seed = trial_seed(master, i as u64);
            let g = crate::gen::gnp(params.n, p, &mut rng(seed));
            let res = run_timed(&g, &params.clone().with_seed(seed), timed);
            let status = serde_json::to_value(&res.outcome).ok().and_then(|v| v["status"].as_str().map(str::to_owned)).unwrap_or_default();
            let run = CorpusRun {
                seed,
                min_degree: g.min_degree(),
                status,
                success: res.is_success(),
                rounds: res.stats.rounds,
                retries_per_round: res.stats.retries_per_round.clone(),
                wall_ms: res.stats.elapsed_ms,
            };
            (run, res.outcome.certificate().cloned(), g)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RetrySummary {
    pub runs: usize,
    pub rounds: usize,
    pub mean_retries_per_round: f64,
    pub max_retries_per_round: usize,
    /// Rejected samples over all samples drawn.
    pub failure_rate: f64,
    /// `exp(-s / 64k)`, printed for context.
    pub per_part_bound: Option<f64>,
}

/// Summarizes per-round retry counts (one list per run).
pub fn retry_stats(runs: &[Vec<usize>], s_and_k: Option<(usize, usize)>) -> RetrySummary {
    let all: Vec<usize> = runs.iter().flatten().copied().collect();
    let rounds = all.len();
    let retries: usize = all.iter().sum();
    RetrySummary {
        runs: runs.len(),
        rounds,
        mean_retries_per_round: if rounds == 0 { 0.0 } else { retries as f64 / rounds as f64 },
        max_retries_per_round: all.iter().copied().max().unwrap_or(0),
        failure_rate: if rounds == 0 { 0.0 } else { retries as f64 / (retries + rounds) as f64 },
        per_part_bound: s_and_k.map(|(s, k)| (-(s as f64) / (64.0 * k as f64)).exp()),
    }
}
