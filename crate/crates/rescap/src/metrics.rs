//! Node- and group-level social-capital metrics and the structural
//! group-unfairness disparities.
//!
//! Per node `u`: isolation `sum_v R_uv`, diameter `max_v R_uv`, and control
//! `sum_{v in N(u)} R_uv`. Group values are arithmetic means over members.
//! A disparity is the max−min gap of a group metric across groups, which
//! equals the maximum over ordered group pairs of the differences.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, GroupPartition};
use crate::spectral::{LaplacianState, ResistanceMatrix};

/// Per-node metric vectors, indexed by internal node index.
#[derive(Debug, Clone)]
pub struct NodeMetrics {
    /// Total effective resistance of each node.
    pub isolation: Vec<f64>,
    /// Maximum effective resistance from each node.
    pub diameter: Vec<f64>,
    /// Sum of resistances over incident edges; in `[1, degree]` on
    /// connected graphs.
    pub control: Vec<f64>,
}

/// Mean metrics of one group.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroupStats {
    pub isolation: f64,
    pub diameter: f64,
    pub control: f64,
    pub size: usize,
}

/// Per-group metrics keyed by attribute value.
#[derive(Debug, Clone, Serialize)]
pub struct GroupMetrics {
    pub groups: BTreeMap<String, GroupStats>,
}

/// One max−min disparity with the groups realizing it.
#[derive(Debug, Clone, Serialize)]
pub struct Disparity {
    pub value: f64,
    /// Group attaining the maximum metric value.
    pub max_group: String,
    /// Group attaining the minimum metric value.
    pub min_group: String,
}

/// The three structural group-unfairness measures.
#[derive(Debug, Clone, Serialize)]
pub struct DisparityReport {
    pub isolation: Disparity,
    pub diameter: Disparity,
    pub control: Disparity,
    /// Group with the largest isolation (ties broken lexicographically).
    pub disadvantaged_group: String,
}

/// Whole-graph aggregates.
#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    /// Total effective resistance, `(1/2) 1^T R 1`.
    pub total_resistance: f64,
    /// Largest pairwise resistance.
    pub resistance_diameter: f64,
    /// Smallest non-zero Laplacian eigenvalue (diagnostic).
    pub spectral_gap: f64,
    /// Sum of degrees, `2m`.
    pub volume: usize,
    pub node_count: usize,
    pub edge_count: usize,
}

/// Compute the three per-node vectors from a resistance matrix.
pub fn node_metrics(r: &ResistanceMatrix, g: &AttributedGraph) -> NodeMetrics {
    let n = r.n();
    let mut isolation = vec![0.0; n];
    let mut diameter = vec![0.0; n];
    let mut control = vec![0.0; n];
    for u in 0..n {
        let mut sum = 0.0;
        let mut max = 0.0_f64;
        for v in 0..n {
            let val = r.get(u, v);
            sum += val;
            max = max.max(val);
        }
        isolation[u] = sum;
        diameter[u] = max;
        control[u] = g.neighbors(u).iter().map(|&v| r.get(u, v)).sum();
    }
    NodeMetrics {
        isolation,
        diameter,
        control,
    }
}

/// Group means of the node metrics; excluded nodes contribute to no group.
pub fn group_metrics(nm: &NodeMetrics, p: &GroupPartition) -> Result<GroupMetrics> {
    let mut groups = BTreeMap::new();
    for (value, members) in p.groups() {
        if members.is_empty() {
            return Err(Error::InvalidConfig(format!("group `{value}` is empty")));
        }
        let size = members.len() as f64;
        let mean = |vec: &[f64]| members.iter().map(|&u| vec[u]).sum::<f64>() / size;
        groups.insert(
            value.clone(),
            GroupStats {
                isolation: mean(&nm.isolation),
                diameter: mean(&nm.diameter),
                control: mean(&nm.control),
                size: members.len(),
            },
        );
    }
    Ok(GroupMetrics { groups })
}

fn disparity_of<F: Fn(&GroupStats) -> f64>(gm: &GroupMetrics, metric: F) -> Disparity {
    // BTreeMap iteration is key-ascending, so strict comparisons break ties
    // toward the lexicographically smallest attribute value.
    let mut max_group = None;
    let mut min_group = None;
    for (name, stats) in &gm.groups {
        let value = metric(stats);
        match max_group {
            None => max_group = Some((name, value)),
            Some((_, best)) if value > best => max_group = Some((name, value)),
            _ => {}
        }
        match min_group {
            None => min_group = Some((name, value)),
            Some((_, best)) if value < best => min_group = Some((name, value)),
            _ => {}
        }
    }
    let (max_name, max_value) = max_group.expect("at least one group");
    let (min_name, min_value) = min_group.expect("at least one group");
    Disparity {
        value: max_value - min_value,
        max_group: max_name.clone(),
        min_group: min_name.clone(),
    }
}

/// Max−min disparities over groups. Requires at least two groups.
pub fn disparity_report(gm: &GroupMetrics) -> Result<DisparityReport> {
    if gm.groups.len() < 2 {
        return Err(Error::TooFewGroups {
            found: gm.groups.len(),
        });
    }
    let isolation = disparity_of(gm, |s| s.isolation);
    let diameter = disparity_of(gm, |s| s.diameter);
    let control = disparity_of(gm, |s| s.control);
    let disadvantaged_group = isolation.max_group.clone();
    Ok(DisparityReport {
        isolation,
        diameter,
        control,
        disadvantaged_group,
    })
}

/// Identify the most isolated group without requiring two groups.
pub fn disadvantaged_group(gm: &GroupMetrics) -> String {
    disparity_of(gm, |s| s.isolation).max_group
}

/// Whole-graph aggregates from consistent inputs.
pub fn graph_summary(
    state: &LaplacianState,
    r: &ResistanceMatrix,
    g: &AttributedGraph,
) -> GraphSummary {
    GraphSummary {
        total_resistance: r.total_resistance(),
        resistance_diameter: r.max_entry(),
        spectral_gap: state.spectral_gap_estimate(),
        volume: g.volume(),
        node_count: g.node_count(),
        edge_count: g.edge_count(),
    }
}

/// Bundle serialized by `analyze` and per-snapshot records.
#[derive(Debug, Clone, Serialize)]
pub struct MetricsReport {
    pub groups: BTreeMap<String, GroupStats>,
    pub disparities: DisparityReport,
    pub summary: GraphSummary,
    pub excluded_nodes: usize,
}

impl MetricsReport {
    pub fn new(
        gm: &GroupMetrics,
        dr: &DisparityReport,
        summary: &GraphSummary,
        excluded_nodes: usize,
    ) -> Self {
        MetricsReport {
            groups: gm.groups.clone(),
            disparities: dr.clone(),
            summary: summary.clone(),
            excluded_nodes,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Flat CSV: one row per group plus one graph row. The graph row carries
    /// the whole-graph aggregates (total resistance, resistance diameter,
    /// mean node control) and the three disparities.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("group,isolation,diameter,control,d_isolation,d_diameter,d_control\n");
        for (name, stats) in &self.groups {
            out.push_str(&format!(
                "{},{},{},{},,,\n",
                name, stats.isolation, stats.diameter, stats.control
            ));
        }
        let mean_control = 2.0 - 2.0 / self.summary.node_count as f64;
        out.push_str(&format!(
            "graph,{},{},{},{},{},{}\n",
            self.summary.total_resistance,
            self.summary.resistance_diameter,
            mean_control,
            self.disparities.isolation.value,
            self.disparities.diameter.value,
            self.disparities.control.value
        ));
        out
    }
}
