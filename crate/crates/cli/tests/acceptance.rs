//! Acceptance run. Prints one PASS/FAIL line per criterion and exits with a
//! nonzero status if any criterion fails. Numeric arguments select a subset:
//! `cargo test --release --test acceptance -- 8 10`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::Rng;
use spanbip::connectivity::{disjoint_paths, min_separator};
use spanbip::experiments::{gnp_corpus, rcolor_batch, retry_stats, success_rate, CorpusRun};
use spanbip::gen::{
    absorb_instance, gnp, planted_blocks, random_k_connected, random_out_regular, rng, trial_seed, union_instance,
};
use spanbip::graph::components;
use spanbip::merge::{absorb_vertex, split_classes, union_parts};
use spanbip::oracle::{all_four_vertex_graphs, best_bipartite_kappa, brute, even_witness, has_spanning_bipartite_k, odd_cycle_witness};
use spanbip::peel::{linear_budget, log_budget, peel_linear, peel_log, PeelResult};
use spanbip::pipeline::{params_for, retry_cap_for, run, span2connected, PipelineParams, Regime};
use spanbip::{is_k_connected, vertex_connectivity, BipartiteCertificate, Color, Digraph, Graph};
use spanbip_cli::io::{write_digraph, write_graph};

const MASTER: u64 = 20_240_601;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict { passed, detail: detail.into() }
}

fn within(start: Instant, budget: Duration) -> bool {
    start.elapsed() <= budget
}

/// Spanning, host edges only, proper and `k`-connected, checked from scratch.
fn certificate_holds(host: &Graph, cert: &BipartiteCertificate, k: usize) -> bool {
    let n = host.n();
    let colors = cert.coloring().to_dense(n);
    let spanning = cert.is_spanning(n) && colors.iter().all(Option::is_some);
    let h = Graph::new(n, cert.edges()).unwrap();
    spanning
        && h.edges().all(|(u, v)| host.has_edge(u, v) && colors[u] != colors[v])
        && is_k_connected(&h, k).is_connected()
}

fn c1_connectivity_exactness() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 3..=12 {
        let g = Graph::complete(n);
        if vertex_connectivity(&g) != n - 1 || brute::vertex_connectivity(&g) != n - 1 {
            bad.push(format!("K_{n}"));
        }
    }
    for n in 4..=12 {
        let g = Graph::cycle(n);
        if vertex_connectivity(&g) != 2 || brute::vertex_connectivity(&g) != 2 {
            bad.push(format!("C_{n}"));
        }
    }
    let p = Graph::petersen();
    let (flow, enumerated) = (vertex_connectivity(&p), brute::vertex_connectivity(&p));
    if flow != 3 || enumerated != 3 {
        bad.push(format!("Petersen: flow {flow}, enumeration {enumerated}"));
    }
    let fast = within(start, Duration::from_secs(1));
    verdict(bad.is_empty() && fast, format!("mismatches {bad:?}, {:.3}s", start.elapsed().as_secs_f64()))
}

fn c2_menger_equality() -> Verdict {
    let start = Instant::now();
    let (mut pairs, mut bad) = (0usize, 0usize);
    for i in 0..200 {
        let mut r = rng(trial_seed(MASTER ^ 2, i));
        let n = r.gen_range(4..=14);
        let g = gnp(n, 0.5, &mut r);
        for a in 0..n {
            for b in a + 1..n {
                if g.has_edge(a, b) {
                    continue;
                }
                pairs += 1;
                let cut = min_separator(&g, a, b).unwrap();
                let paths = disjoint_paths(&g, a, b, usize::MAX, false).unwrap().system;
                let (size, _) = brute::min_separator(&g, a, b);
                let separates = components(&g, &cut.vertices).iter().all(|c| !(c.contains(&a) && c.contains(&b)));
                if cut.len() != size || paths.paths.len() != size || !paths.is_valid_for(&g) || !separates {
                    bad += 1;
                }
            }
        }
    }
    let fast = within(start, Duration::from_secs(60));
    verdict(bad == 0 && fast, format!("{pairs} pairs, {bad} disagreements, {:.1}s", start.elapsed().as_secs_f64()))
}

fn c3_lower_bound_witnesses() -> Verdict {
    let mut rows = Vec::new();
    let mut ok = true;
    let graphs = [5, 7, 9, 11].map(|n| (n, odd_cycle_witness(n).unwrap()));
    let even = [6, 8, 10].map(|n| (n, even_witness(n).unwrap()));
    for (n, g) in graphs.iter().chain(even.iter()) {
        let kappa = vertex_connectivity(g);
        let best = best_bipartite_kappa(g).unwrap().best_kappa;
        ok &= kappa >= 2 && brute::vertex_connectivity(g) >= 2 && best <= 1;
        rows.push(format!("n={n}: kappa {kappa}, best {best}"));
    }
    verdict(ok, rows.join("; "))
}

fn c4_four_vertex_graphs() -> Verdict {
    let graphs = all_four_vertex_graphs();
    let two_connected: Vec<&Graph> = graphs.iter().filter(|g| brute::vertex_connectivity(g) >= 2).collect();
    let passing = two_connected.iter().filter(|g| best_bipartite_kappa(g).unwrap().best_kappa >= 2).count();
    verdict(
        graphs.len() == 64 && !two_connected.is_empty() && passing == two_connected.len(),
        format!("{} graphs, {} 2-connected, {passing} with a 2-connected spanning bipartite subgraph", graphs.len(), two_connected.len()),
    )
}

fn c5_span2() -> Verdict {
    let start = Instant::now();
    let (mut verified, mut not_three) = (0, 0);
    for i in 0..200 {
        let mut r = rng(trial_seed(MASTER ^ 5, i));
        let n = r.gen_range(4..=50);
        let g = random_k_connected(n, 3, &mut r);
        if vertex_connectivity(&g) < 3 {
            not_three += 1;
            continue;
        }
        if let Ok(cert) = span2connected(&g) {
            if certificate_holds(&g, &cert, 2) && vertex_connectivity(&cert.local_graph().0) >= 2 {
                verified += 1;
            }
        }
    }
    let fast = within(start, Duration::from_secs(120));
    verdict(
        verified == 200 && not_three == 0 && fast,
        format!("{verified}/200 verified, {not_three} inputs below 3-connected, {:.1}s", start.elapsed().as_secs_f64()),
    )
}

/// Every coloring of `edges` crossing pairs splits into classes with
/// `max(f13 + f24, f14 + f23) >= k`.
fn pigeonhole_union(edges: usize, k: usize) -> bool {
    let c = |bit: u32| Color::from_bit(bit == 1);
    (0u32..1 << (2 * edges)).all(|pattern| {
        let [f13, f14, f23, f24] = split_classes((0..edges).map(|i| (c(pattern >> (2 * i) & 1), c(pattern >> (2 * i + 1) & 1))));
        (f13 + f24).max(f14 + f23) >= k
    })
}

/// Every coloring of `nbrs` neighbors has a class with at least `k` of them.
fn pigeonhole_absorb(nbrs: usize, k: usize) -> bool {
    (0u32..1 << nbrs).all(|pattern| {
        let blue = pattern.count_ones() as usize;
        blue.max(nbrs - blue) >= k
    })
}

fn c6_merge_lemmas() -> Verdict {
    let (mut union_ok, mut absorb_ok, mut split_ok) = (0, 0, true);
    for i in 0..500 {
        let mut r = rng(trial_seed(MASTER ^ 6, i));
        let k = r.gen_range(1..=4);
        let a = r.gen_range(2 * k..=12);
        let b = r.gen_range(2 * k..=12);
        let cross = r.gen_range(2 * k - 1..=a.min(b));
        let (host, b1, b2, matching) = union_instance(a, b, k, cross, &mut r);
        split_ok &= pigeonhole_union(2 * k - 1, k);
        if let Ok((merged, _)) = union_parts(&b1, &b2, &matching, k) {
            if merged.verify(&host).is_ok() && certificate_holds(&host, &merged, k) {
                union_ok += 1;
            }
        }
        let degree = r.gen_range(2 * k - 1..=a);
        let (host, b1, edges) = absorb_instance(a, k, degree, &mut r);
        split_ok &= pigeonhole_absorb(degree, k);
        if let Ok((merged, _)) = absorb_vertex(&b1, a, &edges, k) {
            if merged.verify(&host).is_ok() && certificate_holds(&host, &merged, k) {
                absorb_ok += 1;
            }
        }
    }
    verdict(
        union_ok == 500 && absorb_ok == 500 && split_ok,
        format!("union {union_ok}/500, absorb {absorb_ok}/500, exhaustive splits {}", if split_ok { "hold" } else { "violated" }),
    )
}

/// Connectivity of the kept part and every survivor's loss against `max_loss`.
fn peel_holds(d: &Digraph, res: &PeelResult, k: usize, max_loss: f64) -> bool {
    let (sub, labels) = d.induced(&res.survivors);
    vertex_connectivity(&sub.underlying()) >= k
        && sub.n() > k
        && labels.iter().enumerate().all(|(i, &v)| sub.out_degree(i) as f64 >= d.out_degree(v) as f64 - max_loss)
}

fn c7_peel_contracts() -> Verdict {
    let start = Instant::now();
    let mut log_ok = 0;
    let mut peeled = 0;
    for i in 0..200u64 {
        let mut r = rng(trial_seed(MASTER ^ 7, i));
        let k = if i % 2 == 0 { 2 } else { 3 };
        let d = if i % 4 < 2 {
            let blocks: Vec<usize> = (0..r.gen_range(2..=4)).map(|_| r.gen_range(20..=35)).collect();
            let n = k - 1 + blocks.iter().sum::<usize>();
            let out = log_budget(k, n).floor() as usize + 1 + r.gen_range(0..4);
            planted_blocks(&blocks, k - 1, out, &mut r)
        } else {
            let n = r.gen_range(20..=150);
            let out = log_budget(k, n).floor() as usize + 1 + r.gen_range(0..6);
            random_out_regular(n, out, &mut r)
        };
        let n = d.n();
        if let Ok(res) = peel_log(&d, k, n) {
            peeled += usize::from(res.steps() > 0);
            log_ok += usize::from(n <= 150 && peel_holds(&d, &res, k, log_budget(k, n)));
        }
    }
    let mut linear_ok = 0;
    let mut linear_total = 0;
    for c in [0.02, 0.05] {
        for i in 0..25u64 {
            let mut r = rng(trial_seed(MASTER ^ 77 ^ (c * 1000.0) as u64, i));
            let n = r.gen_range(100..=300);
            let lb = linear_budget(c, n).unwrap();
            let out = lb.min_out_required.ceil() as usize + r.gen_range(0..8);
            let hub = lb.k - 1;
            let half = (n - hub) / 2;
            let d = if i % 2 == 0 && half + hub > out {
                planted_blocks(&[half, n - hub - half], hub, out, &mut r)
            } else {
                random_out_regular(n, out, &mut r)
            };
            linear_total += 1;
            if let Ok(res) = peel_linear(&d, c, n) {
                linear_ok += usize::from(res.steps() <= lb.max_steps && peel_holds(&d, &res, lb.k, lb.budget as f64));
            }
        }
    }
    let fast = within(start, Duration::from_secs(120));
    verdict(
        log_ok == 200 && linear_ok == linear_total && fast,
        format!(
            "log {log_ok}/200 ({peeled} needed a cut), linear {linear_ok}/{linear_total}, {:.1}s",
            start.elapsed().as_secs_f64()
        ),
    )
}

struct Corpus {
    s: usize,
    k: usize,
    runs: Vec<(CorpusRun, bool)>,
    elapsed: Duration,
}

/// Ten seeds of `G(1024, 0.95)` in regime a with `k = 2`.
fn regime_a_corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let start = Instant::now();
        let params = params_for(2, 1024, Regime::A, None).unwrap();
        let runs = gnp_corpus(0.95, &params, 10, MASTER, false)
            .into_iter()
            .map(|(run, cert, g)| {
                let sound = cert.is_none_or(|c| certificate_holds(&g, &c, 2));
                (run, sound)
            })
            .collect();
        Corpus { s: params.s, k: params.k, runs, elapsed: start.elapsed() }
    })
}

fn c8_regime_a() -> Verdict {
    let corpus = regime_a_corpus();
    let eligible = corpus.runs.iter().filter(|(r, _)| r.min_degree >= 880).count();
    let verified = corpus.runs.iter().filter(|(r, sound)| r.success && *sound && r.min_degree >= 880).count();
    let unsound = corpus.runs.iter().filter(|(_, sound)| !sound).count();
    let unstructured = corpus.runs.iter().filter(|(r, _)| !r.success && (r.status.is_empty() || r.status == "success")).count();
    let statuses: Vec<&str> = corpus.runs.iter().map(|(r, _)| r.status.as_str()).collect();
    verdict(
        corpus.s == 880 && eligible == 10 && verified >= 9 && unsound == 0 && unstructured == 0 && corpus.elapsed <= Duration::from_secs(600),
        format!(
            "s = {}, {eligible}/10 with min degree >= 880, {verified}/10 verified, statuses {statuses:?}, {:.1}s",
            corpus.s,
            corpus.elapsed.as_secs_f64()
        ),
    )
}

fn c9_opportunistic() -> Verdict {
    let (mut verified, mut small, mut small_confirmed) = (0, 0, 0);
    for i in 0..100u64 {
        let seed = trial_seed(MASTER ^ 9, i);
        let mut r = rng(seed);
        let n = if i < 30 { r.gen_range(8..=14) } else { r.gen_range(15..=200) };
        let k = 2 + (i % 2) as usize;
        let g = gnp(n, r.gen_range(0.7..0.95), &mut r);
        let res = run(&g, &PipelineParams::opportunistic(&g, k).with_seed(seed));
        if let Some(cert) = res.outcome.certificate() {
            if certificate_holds(&g, cert, k) {
                verified += 1;
                if n <= 14 {
                    small += 1;
                    small_confirmed += usize::from(has_spanning_bipartite_k(&g, k).unwrap());
                }
            }
        }
    }
    verdict(
        verified >= 95 && small == small_confirmed,
        format!("{verified}/100 verified, {small_confirmed}/{small} small successes confirmed by the oracle"),
    )
}

fn c10_retries() -> Verdict {
    let corpus = regime_a_corpus();
    let per_round: Vec<Vec<usize>> = corpus.runs.iter().map(|(r, _)| r.retries_per_round.clone()).collect();
    let summary = retry_stats(&per_round, Some((corpus.s, corpus.k)));
    // The cap grows with the part count; the smallest possible cap bounds every round.
    let cap = retry_cap_for(1);
    verdict(
        summary.rounds > 0 && summary.mean_retries_per_round <= 3.0 && summary.max_retries_per_round <= cap && summary.failure_rate < 0.5,
        format!(
            "{} rounds, mean {:.3}, max {} (cap {cap}), failure rate {:.3}, exp(-s/64k) = {:.2e}",
            summary.rounds,
            summary.mean_retries_per_round,
            summary.max_retries_per_round,
            summary.failure_rate,
            summary.per_part_bound.unwrap_or(f64::NAN)
        ),
    )
}

fn c11_rcolor_trend() -> Verdict {
    let g = Graph::complete(80);
    let many = success_rate(&rcolor_batch(&g, 32, 0.15, 100, MASTER ^ 11));
    let few = success_rate(&rcolor_batch(&g, 4, 0.15, 100, MASTER ^ 11));
    verdict(many >= 0.9 && few < many, format!("r = 32: {:.2}, r = 4: {:.2} (needs >= 0.90 and strictly lower)", many, few))
}

fn spanbip(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_spanbip")).args(args).output().expect("spawn spanbip");
    (out.status.code(), out.stdout)
}

fn write(dir: &Path, name: &str, text: String) -> String {
    let path: PathBuf = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn c12_determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let petersen = write(d, "petersen.txt", write_graph(&Graph::petersen()));
    let c5 = write(d, "c5.txt", write_graph(&Graph::cycle(5)));
    let three = write(d, "three.txt", write_graph(&random_k_connected(40, 3, &mut rng(MASTER))));
    let dense = write(d, "dense.txt", write_graph(&gnp(120, 0.85, &mut rng(MASTER))));
    let big = write(d, "big.txt", write_graph(&gnp(1024, 0.95, &mut rng(MASTER))));
    let digraph = write(d, "d.txt", write_digraph(&planted_blocks(&[30, 30], 1, 8, &mut rng(MASTER))));
    let commands: Vec<Vec<&str>> = vec![
        vec!["kappa", "--input", &petersen, "--k", "3"],
        vec!["oracle", "--input", &c5, "--k", "2"],
        vec!["witness", "--n", "10"],
        vec!["span2", "--input", &three],
        vec!["peel", "--input", &digraph, "--k", "2"],
        vec!["bipartition", "--input", &big, "--k", "2", "--seed", "5"],
        vec!["bipartition", "--input", &dense, "--k", "3", "--mode", "opportunistic", "--seed", "6", "--verify", "sampled"],
        vec!["experiment", "rcolor", "--complete", "80", "--r", "32", "--c", "0.15", "--trials", "100", "--seed", "11"],
        vec!["experiment", "retry", "--trials", "3", "--seed", "10"],
        vec!["experiment", "fkn", "--n", "32,64", "--k", "2", "--trials", "3", "--seed", "9"],
    ];
    let mut differing = Vec::new();
    for args in &commands {
        let first = spanbip(args);
        let second = spanbip(args);
        let parses = serde_json::from_slice::<serde_json::Value>(&first.1).is_ok();
        if first != second || !parses || first.1.is_empty() {
            differing.push(args[0..2].join(" "));
        }
    }
    verdict(differing.is_empty(), format!("{} commands run twice, differing or invalid: {differing:?}", commands.len()))
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 12] = [
        ("connectivity exactness", c1_connectivity_exactness),
        ("menger equality", c2_menger_equality),
        ("lower-bound witnesses", c3_lower_bound_witnesses),
        ("four-vertex graphs", c4_four_vertex_graphs),
        ("ear construction on 3-connected graphs", c5_span2),
        ("union and absorb merges", c6_merge_lemmas),
        ("peel contracts", c7_peel_contracts),
        ("regime a at n = 1024", c8_regime_a),
        ("opportunistic mode", c9_opportunistic),
        ("coloring-round retries", c10_retries),
        ("random coloring trend", c11_rcolor_trend),
        ("determinism", c12_determinism),
    ];
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let number = i + 1;
        if !selected.is_empty() && !selected.contains(&number) {
            continue;
        }
        let v = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            verdict(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        failed += usize::from(!v.passed);
        println!("{} criterion {number:>2} ({name}): {}", if v.passed { "PASS" } else { "FAIL" }, v.detail);
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
