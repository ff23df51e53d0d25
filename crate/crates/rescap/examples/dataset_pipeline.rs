//! The full file-based pipeline the CLI wraps: write input files, load,
//! reduce to the largest connected component, analyze, intervene, and emit
//! the same CSV outputs as `rescap intervene`.
//!
//! ```bash
//! cargo run --release --example dataset_pipeline
//! ```

use rescap::cli::{execute, exit_code, Command, RunConfig};
use rescap::intervention::Strategy;

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join("rescap-dataset-pipeline");
    std::fs::create_dir_all(&dir)?;

    // an edge list with the quirks the loader absorbs: comments, duplicate
    // rows, a self-loop, and a second component that LCC extraction drops.
    // the blue team hangs off the red core as a chain, so it starts isolated
    let edges = dir.join("toy.edges");
    std::fs::write(
        &edges,
        "# toy friendship network\n\
         ana,bo\nbo,cy\ncy,ana\nana,dee\nbo,dee\nana,bo # duplicate\n\
         dee,eva\neva,fay\nfay,gil\n\
         hal,hal # self-loop\n\
         ivo,jay # separate component\n",
    )?;
    let attrs = dir.join("toy.attrs");
    std::fs::write(
        &attrs,
        "node,team\nana,red\nbo,red\ncy,red\ndee,\neva,blue\nfay,blue\ngil,blue\nivo,red\njay,blue\n",
    )?;

    let mut cfg = RunConfig::new(
        Command::Intervene,
        edges,
        attrs,
        "team".to_string(),
    );
    cfg.strategies = vec![Strategy::Erg];
    cfg.budget = 3;
    cfg.out_dir = dir.join("out");
    cfg.force = true;

    let code = execute(&cfg);
    assert_eq!(code, exit_code::OK);

    println!("\noutputs in {}:", cfg.out_dir.display());
    for name in ["edges.csv", "evolution.csv", "metrics.csv", "metrics.json"] {
        let path = cfg.out_dir.join(name);
        println!("--- {name} ({} bytes)", std::fs::metadata(&path)?.len());
        if name.ends_with(".csv") {
            print!("{}", std::fs::read_to_string(&path)?);
        }
    }
    Ok(())
}
