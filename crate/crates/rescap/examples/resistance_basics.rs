//! Effective-resistance identities on closed-form graphs.
//!
//! Complete graphs, trees and cycles have known resistances; this example
//! computes them and checks the conservation laws that hold on every
//! connected graph (edge resistances summing to `n - 1`, node controls to
//! `2n - 2`).
//!
//! ```bash
//! cargo run --release --example resistance_basics
//! ```

use rescap::graph::AttributedGraph;
use rescap::metrics::node_metrics;
use rescap::spectral::{oracle_resistance, LaplacianState};
use rescap::synthetic;

fn main() -> rescap::Result<()> {
    // K5: every pair at 2/n
    let mut edges = Vec::new();
    for u in 0..5 {
        for v in (u + 1)..5 {
            edges.push((u, v));
        }
    }
    let k5 = AttributedGraph::from_edges(5, &edges)?;
    let state = LaplacianState::from_graph(&k5)?;
    println!("K5: R_01 = {:.6} (expected 2/5 = 0.4)", state.effective_resistance(0, 1));
    println!(
        "K5: R_tot = {:.6} (expected n - 1 = 4, the minimum over connected graphs)",
        state.resistance_matrix().total_resistance()
    );

    // C4: opposite corners see two 2-hop paths in parallel
    let c4 = AttributedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])?;
    let state = LaplacianState::from_graph(&c4)?;
    println!("\nC4: R_02 = {:.6} (series-parallel: 2 || 2 = 1)", state.effective_resistance(0, 2));
    println!("C4: grounded-solve oracle agrees: {:.6}", oracle_resistance(&c4, 0, 2)?);

    // conservation on an arbitrary connected graph
    let g = synthetic::connected_erdos_renyi(60, 0.08, 42);
    let state = LaplacianState::from_graph(&g)?;
    let r = state.resistance_matrix();
    let nm = node_metrics(&r, &g);
    let edge_sum: f64 = g.edges().map(|(u, v)| r.get(u, v)).sum();
    let control_sum: f64 = nm.control.iter().sum();
    let n = g.node_count();
    println!("\nrandom graph (n = {n}, m = {}):", g.edge_count());
    println!("  sum of edge resistances  = {edge_sum:.9}  (always n - 1 = {})", n - 1);
    println!("  sum of node controls     = {control_sum:.9}  (always 2n - 2 = {})", 2 * n - 2);
    println!(
        "  mean node control        = {:.9}  (always 2 - 2/n = {:.9})",
        control_sum / n as f64,
        2.0 - 2.0 / n as f64
    );
    println!(
        "  R_tot = {:.6} = n * tr(pinv) = {:.6}",
        r.total_resistance(),
        n as f64 * state.pinv_trace()
    );
    println!("  spectral gap (eigen) = {:.6}", state.spectral_gap()?);
    Ok(())
}
