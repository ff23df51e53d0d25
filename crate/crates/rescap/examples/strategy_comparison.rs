//! All six strategies on the same frozen input, ending in a Pareto table.
//!
//! Weak-tie strategies (`erg`, `cos`, `random`) spend the budget bridging
//! structurally distant pairs; the strong-tie inversions (`s-erg`, `s-cos`)
//! reinforce already-close neighborhoods and barely move the disparities.
//!
//! ```bash
//! cargo run --release --example strategy_comparison
//! ```

use rescap::graph::partition_by_attribute;
use rescap::intervention::{pareto_points, run, InterventionConfig, Strategy};
use rescap::synthetic;

fn main() -> rescap::Result<()> {
    let g = synthetic::planted_two_groups(36, 18, 0.35, 0.03, 11);
    let partition = partition_by_attribute(&g)?;
    let budget = 25;

    let mut traces = Vec::new();
    for strategy in Strategy::ALL {
        let cfg = InterventionConfig {
            seed: 4, // same seed for every randomized strategy
            snapshot_every: 5,
            ..InterventionConfig::new(strategy, budget)
        };
        traces.push(run(&g, &partition, &cfg)?);
    }

    println!(
        "{:<10} {:>12} {:>11} {:>10}",
        "strategy", "d_isolation", "d_diameter", "d_control"
    );
    let original = &traces[0].snapshots[0].disparities;
    println!(
        "{:<10} {:>12.4} {:>11.4} {:>10.4}",
        "original", original.isolation.value, original.diameter.value, original.control.value
    );
    for trace in &traces {
        let d = &trace.snapshots.last().unwrap().disparities;
        println!(
            "{:<10} {:>12.4} {:>11.4} {:>10.4}",
            trace.strategy.name(),
            d.isolation.value,
            d.diameter.value,
            d.control.value
        );
    }

    println!("\npareto points at the final budget (disparity vs summed group metric, lower-left wins):");
    for objective in ["isolation", "diameter"] {
        println!("  objective: {objective}");
        for p in pareto_points(&traces)
            .iter()
            .filter(|p| p.step == budget && p.objective == objective)
        {
            println!("    {:<10} ({:.4}, {:.3})", p.strategy, p.disparity, p.group_total);
        }
    }
    Ok(())
}
