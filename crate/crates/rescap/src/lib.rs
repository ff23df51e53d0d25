//! Group social capital and structural group unfairness in attributed
//! graphs, measured through effective resistance, plus budgeted
//! edge-augmentation interventions that mitigate the unfairness.
//!
//! # What this crate does
//!
//! Viewing an undirected social graph as a network of unit resistors, the
//! effective resistance `R_uv` is an information distance between nodes
//! that accounts for *every* path, not just the shortest one. On top of it
//! this crate computes, for node groups defined by a protected attribute:
//!
//! * **group isolation** — mean total resistance of the group's members,
//! * **group diameter** — mean worst-case resistance to any node,
//! * **group control** — mean resistance mass on incident edges, a
//!   conserved quantity (`2|V| - 2` summed over nodes) that groups can only
//!   redistribute.
//!
//! The max−min gaps of these metrics across groups are the three
//! *structural group unfairness* measures. The [`intervention`] module
//! mitigates them by adding a budget of new edges touching the most
//! isolated group — greedily picking the highest-resistance pair (`erg`),
//! or via random / neighborhood-similarity baselines and their strong-tie
//! inversions — while recording the full metric evolution per step.
//!
//! # Quick start
//!
//! ```
//! use rescap::graph::{partition_by_attribute, AttributedGraph};
//! use rescap::intervention::{run, InterventionConfig, Strategy};
//! use rescap::metrics::{disparity_report, group_metrics, node_metrics};
//! use rescap::spectral::LaplacianState;
//!
//! // a path of four nodes, ends labeled "f", middle labeled "m"
//! let mut g = AttributedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
//! for (node, label) in [(0, "f"), (1, "m"), (2, "m"), (3, "f")] {
//!     g.set_label(node, Some(label));
//! }
//! let partition = partition_by_attribute(&g).unwrap();
//!
//! let state = LaplacianState::from_graph(&g).unwrap();
//! let resistances = state.resistance_matrix();
//! let nm = node_metrics(&resistances, &g);
//! let gm = group_metrics(&nm, &partition).unwrap();
//! let report = disparity_report(&gm).unwrap();
//! assert_eq!(report.disadvantaged_group, "f");
//!
//! // spend two edges on closing the gap
//! let trace = run(&g, &partition, &InterventionConfig::new(Strategy::Erg, 2)).unwrap();
//! let last = trace.snapshots.last().unwrap();
//! assert!(last.disparities.isolation.value < report.isolation.value);
//! ```
//!
//! # Module map
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`graph`] | [`graph::AttributedGraph`], text ingestion, components, partitions |
//! | [`spectral`] | Laplacian pseudo-inverse, resistances, rank-one updates, embedding |
//! | [`metrics`] | node/group social capital and disparity reports |
//! | [`intervention`] | budgeted edge augmentation strategies and traces |
//! | [`cache`] | binary pseudo-inverse cache keyed by edge-set hash |
//! | [`synthetic`] | seeded random graph generators |
//! | [`cli`] | the `analyze` / `intervene` / `compare` commands behind the binary |
//!
//! Runnable walkthroughs live in `examples/` (`cargo run --release
//! --example <name>`): `toy_metrics`, `resistance_basics`,
//! `incremental_updates`, `embedding`, `erg_run`, `strategy_comparison`,
//! `dataset_pipeline`.

pub mod cache;
pub mod cli;
pub mod error;
pub mod graph;
pub mod intervention;
pub mod metrics;
pub mod spectral;
pub mod synthetic;

pub use error::{Error, Result};
