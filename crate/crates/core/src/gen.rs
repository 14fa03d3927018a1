//! Seeded random instances.

use rand::seq::{index, SliceRandom};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::connectivity::is_k_connected;
use crate::graph::{BipartiteCertificate, Color, Digraph, Graph, TwoColoring};

/// Deterministic per-trial seed (SplitMix64 finalizer of `master + index * golden`).
pub fn trial_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges_unchecked(n, edges)
}

/// Smallest `p` (to 1e-6) whose degree distribution puts `mean - z sd` at
/// or above `target`, with `z = sqrt(2 ln n) + 1`.
pub fn p_for_min_degree(n: usize, target: usize) -> Option<f64> {
    if n < 2 || target > n - 1 {
        return None;
    }
    let m = (n - 1) as f64;
    let z = (2.0 * (n as f64).ln()).sqrt() + 1.0;
    let score = |p: f64| m * p - z * (m * p * (1.0 - p)).sqrt();
    if score(1.0) < target as f64 {
        return None;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if score(mid) >= target as f64 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// `G(n, p)` samples until one has minimum degree at least `min_degree`.
pub fn gnp_with_min_degree<R: Rng>(n: usize, p: f64, min_degree: usize, attempts: usize, rng: &mut R) -> Option<Graph> {
    (0..attempts).map(|_| gnp(n, p, rng)).find(|g| g.min_degree() >= min_degree)
}

/// Random Hamiltonian cycle plus `chords` random chords (capped at the
/// number of missing edges).
pub fn cycle_with_chords<R: Rng>(n: usize, chords: usize, rng: &mut R) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut present = std::collections::HashSet::new();
    for i in 0..n {
        let (u, v) = (order[i], order[(i + 1) % n]);
        present.insert((u.min(v), u.max(v)));
    }
    let target = (present.len() + chords).min(n * (n - 1) / 2);
    while present.len() < target {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            present.insert((u.min(v), u.max(v)));
        }
    }
    let mut edges: Vec<(usize, usize)> = present.into_iter().collect();
    edges.sort_unstable();
    Graph::from_edges_unchecked(n, edges)
}

/// Random graph on `n` vertices that is verified `k`-connected: a
/// Hamiltonian cycle plus a random number of chords, resampled until the
/// check passes.
pub fn random_k_connected<R: Rng>(n: usize, k: usize, rng: &mut R) -> Graph {
    assert!(n > k, "a {k}-connected graph needs more than {k} vertices");
    let low = (k * n / 2).saturating_sub(n);
    let high = (3 * k * n).max(low);
    loop {
        let chords = rng.gen_range(low..=high);
        let g = cycle_with_chords(n, chords, rng);
        if is_k_connected(&g, k).is_connected() {
            return g;
        }
    }
}

/// Digraph in which every vertex picks `out` distinct uniform out-neighbors.
pub fn random_out_regular<R: Rng>(n: usize, out: usize, rng: &mut R) -> Digraph {
    let out = out.min(n.saturating_sub(1));
    let mut arcs = Vec::with_capacity(n * out);
    for v in 0..n {
        for i in index::sample(rng, n - 1, out) {
            let u = if i >= v { i + 1 } else { i };
            arcs.push((v, u));
        }
    }
    Digraph::from_arcs_unchecked(n, arcs)
}

/// Blocks of the given sizes joined only through a hub of `hub` vertices.
/// Block vertices choose `out` out-neighbors inside their block or the hub;
/// hub vertices choose among all vertices. Vertices `0..hub` form the hub.
pub fn planted_blocks<R: Rng>(blocks: &[usize], hub: usize, out: usize, rng: &mut R) -> Digraph {
    let n = hub + blocks.iter().sum::<usize>();
    let mut arcs = Vec::new();
    let mut start = hub;
    for &size in blocks {
        let pool: Vec<usize> = (0..hub).chain(start..start + size).collect();
        for v in start..start + size {
            let choices: Vec<usize> = pool.iter().copied().filter(|&u| u != v).collect();
            for i in index::sample(rng, choices.len(), out.min(choices.len())) {
                arcs.push((v, choices[i]));
            }
        }
        start += size;
    }
    for v in 0..hub {
        for i in index::sample(rng, n - 1, out.min(n - 1)) {
            let u = if i >= v { i + 1 } else { i };
            arcs.push((v, u));
        }
    }
    Digraph::from_arcs_unchecked(n, arcs)
}

/// Bipartite `k`-connected certificate on `vertices`: a random complete
/// bipartite graph with sides of at least `k` vertices, thinned in random
/// order while `k`-connectivity survives.
pub fn random_bipartite_certificate<R: Rng>(vertices: &[usize], k: usize, rng: &mut R) -> BipartiteCertificate {
    let n = vertices.len();
    assert!(n >= 2 * k && k >= 1, "need at least 2k vertices");
    let mut order = vertices.to_vec();
    order.shuffle(rng);
    let a = rng.gen_range(k..=n - k);
    let mut coloring = TwoColoring::new();
    for (i, &v) in order.iter().enumerate() {
        coloring.set(v, if i < a { Color::Red } else { Color::Blue });
    }
    let mut local: Vec<(usize, usize)> = Vec::new();
    for i in 0..a {
        for j in a..n {
            local.push((i, j));
        }
    }
    local.shuffle(rng);
    let mut keep = vec![true; local.len()];
    for idx in 0..local.len() {
        keep[idx] = false;
        let g = Graph::from_edges_unchecked(n, local.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e));
        if !is_k_connected(&g, k).is_connected() {
            keep[idx] = true;
        }
    }
    let edges = local.iter().zip(&keep).filter(|(_, &k)| k).map(|(&(i, j), _)| (order[i], order[j]));
    BipartiteCertificate::new(vertices.to_vec(), edges, coloring, k).expect("edges join the two sides")
}

/// Two disjoint random certificates on `0..a` and `a..a + b` joined by a
/// random matching of `cross` edges. The host graph is the union of all
/// three edge sets.
pub fn union_instance<R: Rng>(
    a: usize,
    b: usize,
    k: usize,
    cross: usize,
    rng: &mut R,
) -> (Graph, BipartiteCertificate, BipartiteCertificate, Vec<(usize, usize)>) {
    assert!(cross <= a.min(b), "a matching of {cross} edges does not fit");
    let b1 = random_bipartite_certificate(&(0..a).collect::<Vec<_>>(), k, rng);
    let b2 = random_bipartite_certificate(&(a..a + b).collect::<Vec<_>>(), k, rng);
    let left = index::sample(rng, a, cross).into_vec();
    let right = index::sample(rng, b, cross).into_vec();
    let matching: Vec<(usize, usize)> = left.into_iter().zip(right).map(|(x, y)| (x, a + y)).collect();
    let host = Graph::from_edges_unchecked(a + b, b1.edges().iter().chain(b2.edges()).chain(&matching).copied());
    (host, b1, b2, matching)
}

/// A random certificate on `0..a` and the outside vertex `a` joined to
/// `degree` random vertices of it.
pub fn absorb_instance<R: Rng>(a: usize, k: usize, degree: usize, rng: &mut R) -> (Graph, BipartiteCertificate, Vec<(usize, usize)>) {
    assert!(degree <= a, "vertex {a} cannot have {degree} neighbors among {a}");
    let b1 = random_bipartite_certificate(&(0..a).collect::<Vec<_>>(), k, rng);
    let edges: Vec<(usize, usize)> = index::sample(rng, a, degree).into_iter().map(|w| (a, w)).collect();
    let host = Graph::from_edges_unchecked(a + 1, b1.edges().iter().chain(&edges).copied());
    (host, b1, edges)
}
