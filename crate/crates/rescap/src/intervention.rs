//! Budgeted edge augmentation to mitigate structural group unfairness.
//!
//! All strategies share the same scaffold: identify the most isolated
//! (disadvantaged) group once at the start, then add up to `budget` new
//! edges where each edge touches that group, recording metric snapshots as
//! the graph evolves. They differ only in how the next candidate pair is
//! selected:
//!
//! * `erg` — the pair with the largest current effective resistance
//!   (weak-tie creation; maximally improves information flow),
//! * `cos` — the pair with the smallest adjacency-cosine similarity,
//! * `random` — a uniformly random admissible pair,
//! * `s-erg` / `s-cos` — the strong-tie variants with the objective
//!   inverted (`s-random` coincides with `random`).
//!
//! The pseudo-inverse is maintained incrementally across steps (rank-one
//! updates with periodic refresh), so a step costs `O(n^2)` instead of a
//! fresh `O(n^3)` solve.

use rayon::prelude::*;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, GroupPartition};
use crate::metrics::{
    disparity_report, graph_summary, group_metrics, node_metrics, DisparityReport, GroupMetrics,
    GraphSummary,
};
use crate::spectral::{LaplacianState, DEFAULT_REFRESH_INTERVAL};
use crate::synthetic::seeded_rng;

/// Edge-selection strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Erg,
    Random,
    Cos,
    SErg,
    SCos,
    SRandom,
}

impl Strategy {
    pub const ALL: [Strategy; 6] = [
        Strategy::Erg,
        Strategy::Random,
        Strategy::Cos,
        Strategy::SErg,
        Strategy::SCos,
        Strategy::SRandom,
    ];

    pub fn parse(s: &str) -> Result<Strategy> {
        match s.to_ascii_lowercase().as_str() {
            "erg" => Ok(Strategy::Erg),
            "random" => Ok(Strategy::Random),
            "cos" => Ok(Strategy::Cos),
            "s-erg" => Ok(Strategy::SErg),
            "s-cos" => Ok(Strategy::SCos),
            "s-random" => Ok(Strategy::SRandom),
            other => Err(Error::InvalidConfig(format!(
                "unknown strategy `{other}`; expected erg, random, cos, s-erg, s-cos or s-random"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Erg => "erg",
            Strategy::Random => "random",
            Strategy::Cos => "cos",
            Strategy::SErg => "s-erg",
            Strategy::SCos => "s-cos",
            Strategy::SRandom => "s-random",
        }
    }

    fn is_random(&self) -> bool {
        matches!(self, Strategy::Random | Strategy::SRandom)
    }

    /// Whether selection minimizes the score. Weak-tie `cos` treats the
    /// cosine as a similarity and connects the most dissimilar pair, so it
    /// minimizes; the strong-tie variants invert their weak counterpart.
    fn minimizes_score(&self) -> bool {
        matches!(self, Strategy::SErg | Strategy::Cos)
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters of one intervention run.
#[derive(Debug, Clone)]
pub struct InterventionConfig {
    /// Number of edges to add.
    pub budget: usize,
    pub strategy: Strategy,
    /// Record a snapshot every this many steps (the final step is always
    /// snapshotted).
    pub snapshot_every: usize,
    /// Seed for the randomized strategies.
    pub seed: u64,
    /// Forwarded to the spectral state: full recomputes every this many
    /// incremental updates.
    pub refresh_interval: usize,
    /// Re-identify the disadvantaged group after every step instead of
    /// freezing it at the start. Off by default.
    pub reidentify_each_step: bool,
}

impl InterventionConfig {
    pub fn new(strategy: Strategy, budget: usize) -> Self {
        InterventionConfig {
            budget,
            strategy,
            snapshot_every: 1,
            seed: 0,
            refresh_interval: DEFAULT_REFRESH_INTERVAL,
            reidentify_each_step: false,
        }
    }
}

/// One added edge, with the score that selected it (effective resistance
/// for `erg`/`s-erg` and the random strategies, cosine similarity for
/// `cos`/`s-cos`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AddedEdge {
    pub step: usize,
    pub u: usize,
    pub v: usize,
    pub score: f64,
}

/// Full metric state after a given number of added edges.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub step: usize,
    pub groups: GroupMetrics,
    pub disparities: DisparityReport,
    pub summary: GraphSummary,
}

/// Result of an intervention run: the edge sequence, the metric evolution
/// (snapshot at step 0 and at least at the final step) and the final graph.
#[derive(Debug, Clone)]
pub struct InterventionTrace {
    pub strategy: Strategy,
    pub disadvantaged_group: String,
    pub added_edges: Vec<AddedEdge>,
    pub snapshots: Vec<Snapshot>,
    pub final_graph: AttributedGraph,
    /// True when the candidate set ran out before the budget was spent.
    pub exhausted: bool,
}

/// Cosine similarity of two adjacency rows:
/// `|N(u) ∩ N(v)| / sqrt(d_u d_v)`, zero when either degree is zero.
pub fn adjacency_cosine(g: &AttributedGraph, u: usize, v: usize) -> f64 {
    let du = g.degree(u);
    let dv = g.degree(v);
    if du == 0 || dv == 0 {
        return 0.0;
    }
    let (mut i, mut j, mut common) = (0, 0, 0usize);
    let (nu, nv) = (g.neighbors(u), g.neighbors(v));
    while i < nu.len() && j < nv.len() {
        match nu[i].cmp(&nv[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    common as f64 / ((du as f64) * (dv as f64)).sqrt()
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    u: usize,
    v: usize,
    score: f64,
}

/// Total order on candidates: higher score first (or lower when `minimize`),
/// exact score ties broken by the lexicographically smallest pair. Using a
/// total order makes the parallel reduction deterministic.
fn better(a: &Candidate, b: &Candidate, minimize: bool) -> bool {
    let ord = if minimize {
        b.score.total_cmp(&a.score)
    } else {
        a.score.total_cmp(&b.score)
    };
    match ord {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => (a.u, a.v) < (b.u, b.v),
    }
}

fn pick_best(
    g: &AttributedGraph,
    state: &LaplacianState,
    sd_mask: &[bool],
    sd_members: &[usize],
    strategy: Strategy,
) -> Option<Candidate> {
    let n = g.node_count();
    let score = |u: usize, v: usize| -> f64 {
        match strategy {
            Strategy::Erg | Strategy::SErg => state.effective_resistance(u, v),
            Strategy::Cos | Strategy::SCos => adjacency_cosine(g, u, v),
            Strategy::Random | Strategy::SRandom => unreachable!("random picks are not scored"),
        }
    };
    let minimize = strategy.minimizes_score();
    (0..n)
        .into_par_iter()
        .filter_map(|u| {
            let mut best: Option<Candidate> = None;
            let mut consider = |u: usize, v: usize| {
                if g.has_edge(u, v) {
                    return;
                }
                let c = Candidate { u, v, score: score(u, v) };
                if best.as_ref().is_none_or(|b| better(&c, b, minimize)) {
                    best = Some(c);
                }
            };
            if sd_mask[u] {
                for v in (u + 1)..n {
                    consider(u, v);
                }
            } else {
                for &v in sd_members {
                    if v > u {
                        consider(u, v);
                    }
                }
            }
            best
        })
        .reduce_with(|a, b| if better(&a, &b, minimize) { a } else { b })
}

/// All admissible pairs at the start of a run: normalized `(u, v)` with
/// `u < v`, at least one endpoint in the disadvantaged group, not already an
/// edge. Ascending lexicographic order.
#[allow(clippy::needless_range_loop)]
fn candidate_pairs(g: &AttributedGraph, sd_mask: &[bool], sd_members: &[usize]) -> Vec<(usize, usize)> {
    let n = g.node_count();
    let mut out = Vec::new();
    for u in 0..n {
        if sd_mask[u] {
            for v in (u + 1)..n {
                if !g.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        } else {
            for &v in sd_members {
                if v > u && !g.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

fn take_snapshot(
    state: &LaplacianState,
    g: &AttributedGraph,
    p: &GroupPartition,
    step: usize,
) -> Result<Snapshot> {
    let r = state.resistance_matrix();
    let nm = node_metrics(&r, g);
    let groups = group_metrics(&nm, p)?;
    let disparities = disparity_report(&groups)?;
    let summary = graph_summary(state, &r, g);
    Ok(Snapshot {
        step,
        groups,
        disparities,
        summary,
    })
}

/// Run one budgeted edge-augmentation strategy.
///
/// The disadvantaged group is the one with the largest group isolation in
/// the starting graph (frozen for the whole run unless
/// `reidentify_each_step` is set). When the admissible pairs run out before
/// the budget is spent, the trace is returned with `exhausted` set rather
/// than an error.
pub fn run(
    g: &AttributedGraph,
    p: &GroupPartition,
    cfg: &InterventionConfig,
) -> Result<InterventionTrace> {
    if cfg.snapshot_every == 0 {
        return Err(Error::InvalidConfig("snapshot_every must be positive".into()));
    }
    if cfg.budget > 0 && cfg.snapshot_every > cfg.budget {
        return Err(Error::InvalidConfig(format!(
            "snapshot_every ({}) exceeds budget ({})",
            cfg.snapshot_every, cfg.budget
        )));
    }
    if p.group_count() < 2 {
        return Err(Error::TooFewGroups {
            found: p.group_count(),
        });
    }
    let mut graph = g.clone();
    let mut state = LaplacianState::new(&graph, cfg.refresh_interval)?;

    let initial = take_snapshot(&state, &graph, p, 0)?;
    let mut disadvantaged = initial.disparities.disadvantaged_group.clone();
    let mut sd_members: Vec<usize> = p.group(&disadvantaged).unwrap().to_vec();
    let mut sd_mask = p.mask(&disadvantaged, graph.node_count());

    // Random strategies consume a seeded permutation of the initial
    // candidate set, i.e. draws without replacement.
    let mut random_queue: Vec<(usize, usize)> = if cfg.strategy.is_random() {
        let mut pairs = candidate_pairs(&graph, &sd_mask, &sd_members);
        pairs.shuffle(&mut seeded_rng(cfg.seed));
        pairs.reverse(); // pop() consumes in shuffled order
        pairs
    } else {
        Vec::new()
    };

    let mut added_edges = Vec::with_capacity(cfg.budget);
    let mut snapshots = vec![initial];
    let mut exhausted = false;

    for step in 1..=cfg.budget {
        let picked = if cfg.strategy.is_random() {
            random_queue.pop().map(|(u, v)| Candidate {
                u,
                v,
                score: state.effective_resistance(u, v),
            })
        } else {
            pick_best(&graph, &state, &sd_mask, &sd_members, cfg.strategy)
        };
        let Some(c) = picked else {
            exhausted = true;
            break;
        };

        graph.add_edge(c.u, c.v)?;
        state.add_edge_update(c.u, c.v)?;
        added_edges.push(AddedEdge {
            step,
            u: c.u,
            v: c.v,
            score: c.score,
        });

        if step % cfg.snapshot_every == 0 || step == cfg.budget {
            snapshots.push(take_snapshot(&state, &graph, p, step)?);
        }

        if cfg.reidentify_each_step {
            let r = state.resistance_matrix();
            let nm = node_metrics(&r, &graph);
            let gm = group_metrics(&nm, p)?;
            let current = crate::metrics::disadvantaged_group(&gm);
            if current != disadvantaged {
                disadvantaged = current;
                sd_members = p.group(&disadvantaged).unwrap().to_vec();
                sd_mask = p.mask(&disadvantaged, graph.node_count());
            }
        }
    }

    // an exhausted run still ends with a snapshot of its last state
    let last_step = added_edges.last().map_or(0, |e| e.step);
    if snapshots.last().map(|s| s.step) != Some(last_step) {
        snapshots.push(take_snapshot(&state, &graph, p, last_step)?);
    }

    Ok(InterventionTrace {
        strategy: cfg.strategy,
        disadvantaged_group: snapshots[0].disparities.disadvantaged_group.clone(),
        added_edges,
        snapshots,
        final_graph: graph,
        exhausted,
    })
}

/// One point of the unfairness-vs-capital trade-off curve.
#[derive(Debug, Clone, PartialEq)]
pub struct ParetoPoint {
    pub strategy: &'static str,
    pub step: usize,
    /// `"isolation"` or `"diameter"`.
    pub objective: &'static str,
    /// The group disparity at this step.
    pub disparity: f64,
    /// Sum of the group metric over all groups (lower is better for both
    /// objectives).
    pub group_total: f64,
}

/// Flatten traces into per-snapshot rows: for every strategy and snapshot,
/// one row per objective pairing disparity with the summed group metric.
pub fn pareto_points(traces: &[InterventionTrace]) -> Vec<ParetoPoint> {
    let mut rows = Vec::new();
    for trace in traces {
        for snap in &trace.snapshots {
            let iso_total: f64 = snap.groups.groups.values().map(|s| s.isolation).sum();
            let diam_total: f64 = snap.groups.groups.values().map(|s| s.diameter).sum();
            rows.push(ParetoPoint {
                strategy: trace.strategy.name(),
                step: snap.step,
                objective: "isolation",
                disparity: snap.disparities.isolation.value,
                group_total: iso_total,
            });
            rows.push(ParetoPoint {
                strategy: trace.strategy.name(),
                step: snap.step,
                objective: "diameter",
                disparity: snap.disparities.diameter.value,
                group_total: diam_total,
            });
        }
    }
    rows
}
