//! Commute-time embedding: Euclidean geometry that encodes resistances.
//!
//! Embeds the nodes so that the squared Euclidean distance between two
//! rows equals `vol(G) * R_uv` — the expected round-trip length of a random
//! walk between them.
//!
//! ```bash
//! cargo run --release --example embedding
//! ```

use rescap::spectral::LaplacianState;
use rescap::synthetic;

fn main() -> rescap::Result<()> {
    let g = synthetic::planted_two_groups(12, 12, 0.5, 0.04, 2);
    let state = LaplacianState::from_graph(&g)?;
    let vol = g.volume() as f64;
    let z = state.commute_time_embedding(vol)?;

    println!("embedding is {} x {} (one dimension per non-zero eigenvalue)", z.nrows(), z.ncols());

    let mut worst = 0.0_f64;
    for u in 0..g.node_count() {
        for v in (u + 1)..g.node_count() {
            let d = (z.row(u) - z.row(v)).norm_squared();
            let expected = vol * state.effective_resistance(u, v);
            worst = worst.max(((d - expected) / expected).abs());
        }
    }
    println!("worst relative error of ||z_u - z_v||^2 = vol * R_uv over all pairs: {worst:.3e}");

    // distances across the sparse cut are systematically larger
    let within = (z.row(0) - z.row(5)).norm_squared();
    let across = (z.row(0) - z.row(18)).norm_squared();
    println!("\ncommute time within block a:  {within:.3}");
    println!("commute time across blocks:   {across:.3}");
    println!("(the sparse cut stretches distances by {:.1}x)", across / within);
    Ok(())
}
