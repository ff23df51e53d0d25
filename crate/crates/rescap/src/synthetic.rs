//! Seeded random graph generators for tests, examples and benchmarks.
//!
//! All generators are deterministic for a given seed (ChaCha-based RNG, so
//! results are stable across platforms).

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::graph::AttributedGraph;

/// Deterministic RNG for a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform index in `0..n`.
pub fn rand_index(rng: &mut ChaCha8Rng, n: usize) -> usize {
    rng.random_range(0..n)
}

/// Erdős–Rényi graph `G(n, p)`; may be disconnected.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> AttributedGraph {
    let mut rng = seeded_rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    AttributedGraph::from_edges(n, &edges).expect("n > 0")
}

/// Erdős–Rényi graph made connected by linking consecutive components
/// through their smallest indices. Deterministic given the seed.
pub fn connected_erdos_renyi(n: usize, p: f64, seed: u64) -> AttributedGraph {
    let mut g = erdos_renyi(n, p, seed);
    let comps = g.components();
    for pair in comps.windows(2) {
        g.add_edge(pair[0][0], pair[1][0]).expect("components are disjoint");
    }
    g
}

/// Two planted groups with labels `"a"` (size `n_a`) and `"b"` (size `n_b`),
/// dense within groups (`p_in`) and sparse across (`p_out`), connected.
/// Group `b` is typically the structurally disadvantaged one when it is the
/// smaller or sparser block.
pub fn planted_two_groups(
    n_a: usize,
    n_b: usize,
    p_in: f64,
    p_out: f64,
    seed: u64,
) -> AttributedGraph {
    let n = n_a + n_b;
    let mut rng = seeded_rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let same = (u < n_a) == (v < n_a);
            let p = if same { p_in } else { p_out };
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let mut g = AttributedGraph::from_edges(n, &edges).expect("n > 0");
    let comps = g.components();
    for pair in comps.windows(2) {
        g.add_edge(pair[0][0], pair[1][0]).expect("components are disjoint");
    }
    for u in 0..n {
        g.set_label(u, Some(if u < n_a { "a" } else { "b" }));
    }
    g
}

/// Assign labels from `values` round-robin over node indices.
pub fn stripe_labels(g: &mut AttributedGraph, values: &[&str]) {
    for u in 0..g.node_count() {
        g.set_label(u, Some(values[u % values.len()]));
    }
}
