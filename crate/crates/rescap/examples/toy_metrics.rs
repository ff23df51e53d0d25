//! Group social capital on a graph small enough to check by hand.
//!
//! A star (hub + 4 leaves) with the hub labeled `m` and the leaves `f`:
//! every resistance is a geodesic (the graph is a tree), so the numbers
//! printed here can be checked by hand.
//!
//! ```bash
//! cargo run --release --example toy_metrics
//! ```

use rescap::graph::{partition_by_attribute, AttributedGraph};
use rescap::metrics::{disparity_report, graph_summary, group_metrics, node_metrics};
use rescap::spectral::LaplacianState;

fn main() -> rescap::Result<()> {
    let mut g = AttributedGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)])?;
    g.set_label(0, Some("m"));
    for leaf in 1..5 {
        g.set_label(leaf, Some("f"));
    }
    let partition = partition_by_attribute(&g)?;

    let state = LaplacianState::from_graph(&g)?;
    let r = state.resistance_matrix();
    let nm = node_metrics(&r, &g);

    println!("per-node metrics (tree: resistance = hop distance, control = degree)");
    println!("{:>4} {:>6} {:>10} {:>9} {:>8}", "node", "label", "isolation", "diameter", "control");
    for u in 0..g.node_count() {
        println!(
            "{:>4} {:>6} {:>10.3} {:>9.3} {:>8.3}",
            g.external_id(u),
            g.label(u).unwrap_or("?"),
            nm.isolation[u],
            nm.diameter[u],
            nm.control[u]
        );
    }

    let gm = group_metrics(&nm, &partition)?;
    let dr = disparity_report(&gm)?;
    println!("\ngroup means");
    for (name, stats) in &gm.groups {
        println!(
            "  {name}: isolation {:.3}, diameter {:.3}, control {:.3} ({} members)",
            stats.isolation, stats.diameter, stats.control, stats.size
        );
    }
    println!(
        "\ndisparities: isolation {:.3} ({} vs {}), diameter {:.3}, control {:.3}",
        dr.isolation.value,
        dr.isolation.max_group,
        dr.isolation.min_group,
        dr.diameter.value,
        dr.control.value
    );
    println!("disadvantaged group: {}", dr.disadvantaged_group);

    let summary = graph_summary(&state, &r, &g);
    println!(
        "\ngraph: R_tot {:.3}, R_diam {:.3}, spectral gap {:.3}, vol {}",
        summary.total_resistance, summary.resistance_diameter, summary.spectral_gap, summary.volume
    );
    Ok(())
}
