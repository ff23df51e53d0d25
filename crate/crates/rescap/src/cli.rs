//! The `analyze` / `intervene` / `compare` commands behind the binary.
//!
//! All validation happens before anything is written, every file is written
//! atomically (temp file plus rename), progress goes to standard error and
//! machine-readable data goes to files, so piping the printed summary stays
//! clean.
//!
//! Exit codes: `0` success, `1` internal failure, `2` input/parse error,
//! `3` graph not usable (empty or still disconnected), `4` fewer than two
//! groups, `5` candidate set exhausted before the budget (partial outputs
//! are kept), `6` output exists and `--force` was not given.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::cache;
use crate::error::{Error, Result};
use crate::graph::{load_graph, partition_by_attribute, AttributedGraph, GroupPartition};
use crate::intervention::{pareto_points, run, InterventionConfig, InterventionTrace, Strategy};
use crate::metrics::{
    disparity_report, graph_summary, group_metrics, node_metrics, DisparityReport, MetricsReport,
};
use crate::spectral::{LaplacianState, DEFAULT_REFRESH_INTERVAL};

/// Environment variable naming the pseudo-inverse cache directory.
pub const CACHE_DIR_ENV: &str = "RESCAP_CACHE_DIR";
const DEFAULT_CACHE_DIR: &str = ".rescap-cache";

pub mod exit_code {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const GRAPH: i32 = 3;
    pub const GROUPS: i32 = 4;
    pub const EXHAUSTED: i32 = 5;
    pub const OUTPUT_EXISTS: i32 = 6;
}

/// Which pipeline to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Metrics and disparities of the graph as-is.
    Analyze,
    /// One edge-augmentation strategy with full trace outputs.
    Intervene,
    /// Several strategies from the same frozen input plus a merged Pareto
    /// table.
    Compare,
}

/// Fully resolved configuration for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub edges: PathBuf,
    pub attrs: PathBuf,
    pub attribute: String,
    pub strategies: Vec<Strategy>,
    pub budget: usize,
    pub seed: u64,
    pub snapshot_every: usize,
    pub refresh_interval: usize,
    pub out_dir: PathBuf,
    pub use_cache: bool,
    pub force: bool,
}

impl RunConfig {
    pub fn new(command: Command, edges: PathBuf, attrs: PathBuf, attribute: String) -> Self {
        RunConfig {
            command,
            edges,
            attrs,
            attribute,
            strategies: Vec::new(),
            budget: 0,
            seed: 0,
            snapshot_every: 1,
            refresh_interval: DEFAULT_REFRESH_INTERVAL,
            out_dir: PathBuf::from("."),
            use_cache: false,
            force: false,
        }
    }
}

/// Declarative counterpart of the command-line flags; any explicit flag
/// wins over the file value.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub edges: Option<PathBuf>,
    pub attrs: Option<PathBuf>,
    pub attr: Option<String>,
    pub strategy: Option<Vec<String>>,
    pub budget: Option<usize>,
    pub seed: Option<u64>,
    pub snapshot_every: Option<usize>,
    pub refresh_interval: Option<usize>,
    pub out: Option<PathBuf>,
    pub cache: Option<bool>,
    pub force: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Parse {
            line: 0,
            message: format!("config file {}: {e}", path.display()),
        })
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::Io(_) => exit_code::INPUT,
        Error::EmptyGraph | Error::Disconnected | Error::Singular(_) => exit_code::GRAPH,
        Error::AllUnknown | Error::TooFewGroups { .. } => exit_code::GROUPS,
        Error::OutputExists(_) => exit_code::OUTPUT_EXISTS,
        _ => exit_code::FAILURE,
    }
}

/// Run the configured command; errors go to standard error and are mapped
/// to the documented exit codes.
pub fn execute(cfg: &RunConfig) -> i32 {
    match dispatch(cfg) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

fn dispatch(cfg: &RunConfig) -> Result<i32> {
    match cfg.command {
        Command::Analyze => cmd_analyze(cfg),
        Command::Intervene => cmd_intervene(cfg),
        Command::Compare => cmd_compare(cfg),
    }
}

/// Load, reduce to the largest connected component and partition. All input
/// validation happens here, before any output is written.
fn prepare(cfg: &RunConfig) -> Result<(AttributedGraph, GroupPartition)> {
    let (raw, warnings) = load_graph(&cfg.edges, &cfg.attrs, &cfg.attribute)?;
    if warnings.self_loops > 0 {
        eprintln!("warning: dropped {} self-loop(s)", warnings.self_loops);
    }
    if warnings.duplicate_edges > 0 {
        eprintln!("warning: collapsed {} duplicate edge row(s)", warnings.duplicate_edges);
    }
    if warnings.duplicate_attributes > 0 {
        eprintln!(
            "warning: {} duplicate attribute row(s); last value wins",
            warnings.duplicate_attributes
        );
    }
    if warnings.unmatched_attribute_rows > 0 {
        eprintln!(
            "warning: {} attribute row(s) for nodes absent from the edge list",
            warnings.unmatched_attribute_rows
        );
    }
    let g = raw.largest_connected_component();
    eprintln!(
        "loaded {} nodes, {} edges ({} nodes, {} edges after LCC extraction)",
        raw.node_count(),
        raw.edge_count(),
        g.node_count(),
        g.edge_count()
    );
    let partition = partition_by_attribute(&g)?;
    if partition.group_count() < 2 {
        return Err(Error::TooFewGroups {
            found: partition.group_count(),
        });
    }
    Ok((g, partition))
}

fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

/// Build the spectral state, going through the binary cache when enabled.
fn laplacian_state(g: &AttributedGraph, cfg: &RunConfig) -> Result<LaplacianState> {
    if cfg.use_cache {
        let path = cache::cache_path(&cache_dir(), g);
        if let Some(pinv) = cache::read_cache(&path, g) {
            eprintln!("pseudo-inverse cache hit: {}", path.display());
            return LaplacianState::with_pseudo_inverse(g, pinv, cfg.refresh_interval);
        }
        let state = LaplacianState::new(g, cfg.refresh_interval)?;
        cache::write_cache(&path, g, state.pseudo_inverse())?;
        eprintln!("pseudo-inverse cached at {}", path.display());
        return Ok(state);
    }
    LaplacianState::new(g, cfg.refresh_interval)
}

/// Refuse to clobber existing outputs unless `--force` was given.
fn check_outputs(cfg: &RunConfig, names: &[&str]) -> Result<()> {
    for name in names {
        let path = cfg.out_dir.join(name);
        if path.exists() && !cfg.force {
            return Err(Error::OutputExists(path));
        }
    }
    Ok(())
}

/// Atomic write: temp file in the same directory, then rename.
fn write_file(dir: &Path, name: &str, content: &str) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp"));
    std::fs::write(&tmp, content)?;
    std::fs::rename(&tmp, &path)?;
    Ok(())
}

fn analysis_report(
    g: &AttributedGraph,
    partition: &GroupPartition,
    state: &LaplacianState,
) -> Result<MetricsReport> {
    let r = state.resistance_matrix();
    let nm = node_metrics(&r, g);
    let gm = group_metrics(&nm, partition)?;
    let dr = disparity_report(&gm)?;
    let summary = graph_summary(state, &r, g);
    Ok(MetricsReport::new(&gm, &dr, &summary, partition.excluded().len()))
}

fn print_group_table(report: &MetricsReport) {
    println!("{:<16} {:>12} {:>10} {:>9}", "group", "isolation", "diameter", "control");
    for (name, stats) in &report.groups {
        println!(
            "{:<16} {:>12.4} {:>10.4} {:>9.4}",
            name, stats.isolation, stats.diameter, stats.control
        );
    }
    println!(
        "disparities: d_isolation={:.4} d_diameter={:.4} d_control={:.4} (disadvantaged: {})",
        report.disparities.isolation.value,
        report.disparities.diameter.value,
        report.disparities.control.value,
        report.disparities.disadvantaged_group
    );
}

fn cmd_analyze(cfg: &RunConfig) -> Result<i32> {
    let (g, partition) = prepare(cfg)?;
    check_outputs(cfg, &["metrics.json", "metrics.csv"])?;
    let state = laplacian_state(&g, cfg)?;
    let report = analysis_report(&g, &partition, &state)?;
    write_file(&cfg.out_dir, "metrics.json", &report.to_json())?;
    write_file(&cfg.out_dir, "metrics.csv", &report.to_csv())?;
    print_group_table(&report);
    Ok(exit_code::OK)
}

fn edges_csv(trace: &InterventionTrace, g: &AttributedGraph) -> String {
    let mut out = String::from("step,u_ext,v_ext,score\n");
    for e in &trace.added_edges {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            e.step,
            g.external_id(e.u),
            g.external_id(e.v),
            e.score
        );
    }
    out
}

fn evolution_csv(trace: &InterventionTrace) -> String {
    let mut out =
        String::from("step,group,isolation,diameter,control,d_isolation,d_diameter,d_control,r_tot\n");
    for snap in &trace.snapshots {
        for (name, stats) in &snap.groups.groups {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                snap.step,
                name,
                stats.isolation,
                stats.diameter,
                stats.control,
                snap.disparities.isolation.value,
                snap.disparities.diameter.value,
                snap.disparities.control.value,
                snap.summary.total_resistance
            );
        }
    }
    out
}

fn pareto_csv(traces: &[InterventionTrace]) -> String {
    let mut out = String::from("strategy,step,objective,disparity,group_total\n");
    for p in pareto_points(traces) {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            p.strategy, p.step, p.objective, p.disparity, p.group_total
        );
    }
    out
}

fn disparity_row(label: &str, d: &DisparityReport) -> String {
    format!(
        "{:<12} {:>12.4} {:>11.4} {:>10.4}",
        label, d.isolation.value, d.diameter.value, d.control.value
    )
}

fn intervention_config(cfg: &RunConfig, strategy: Strategy) -> InterventionConfig {
    InterventionConfig {
        budget: cfg.budget,
        strategy,
        snapshot_every: cfg.snapshot_every,
        seed: cfg.seed,
        refresh_interval: cfg.refresh_interval,
        reidentify_each_step: false,
    }
}

fn cmd_intervene(cfg: &RunConfig) -> Result<i32> {
    let strategy = match cfg.strategies.as_slice() {
        [s] => *s,
        _ => {
            return Err(Error::InvalidConfig(
                "intervene needs exactly one --strategy".into(),
            ))
        }
    };
    let (g, partition) = prepare(cfg)?;
    check_outputs(cfg, &["edges.csv", "evolution.csv", "metrics.json", "metrics.csv"])?;
    eprintln!("running {strategy} with budget {}", cfg.budget);
    let trace = run(&g, &partition, &intervention_config(cfg, strategy))?;

    write_file(&cfg.out_dir, "edges.csv", &edges_csv(&trace, &g))?;
    write_file(&cfg.out_dir, "evolution.csv", &evolution_csv(&trace))?;
    let final_state = LaplacianState::new(&trace.final_graph, cfg.refresh_interval)?;
    let report = analysis_report(&trace.final_graph, &partition, &final_state)?;
    write_file(&cfg.out_dir, "metrics.json", &report.to_json())?;
    write_file(&cfg.out_dir, "metrics.csv", &report.to_csv())?;

    println!(
        "{:<12} {:>12} {:>11} {:>10}",
        "", "d_isolation", "d_diameter", "d_control"
    );
    println!("{}", disparity_row("original", &trace.snapshots[0].disparities));
    println!(
        "{}",
        disparity_row(strategy.name(), &trace.snapshots.last().unwrap().disparities)
    );
    if trace.exhausted {
        eprintln!(
            "warning: candidate set exhausted after {} of {} edges; outputs are partial",
            trace.added_edges.len(),
            cfg.budget
        );
        return Ok(exit_code::EXHAUSTED);
    }
    Ok(exit_code::OK)
}

fn cmd_compare(cfg: &RunConfig) -> Result<i32> {
    if cfg.strategies.len() < 2 {
        return Err(Error::InvalidConfig(
            "compare needs at least two --strategy values".into(),
        ));
    }
    let (g, partition) = prepare(cfg)?;
    let mut planned = vec!["pareto.csv".to_string()];
    for s in &cfg.strategies {
        planned.push(format!("evolution_{}.csv", s.name()));
        planned.push(format!("edges_{}.csv", s.name()));
    }
    let planned_refs: Vec<&str> = planned.iter().map(String::as_str).collect();
    check_outputs(cfg, &planned_refs)?;

    let mut traces = Vec::new();
    let mut first_failure: Option<i32> = None;
    for &strategy in &cfg.strategies {
        eprintln!("running {strategy} with budget {}", cfg.budget);
        match run(&g, &partition, &intervention_config(cfg, strategy)) {
            Ok(trace) => {
                write_file(
                    &cfg.out_dir,
                    &format!("evolution_{}.csv", strategy.name()),
                    &evolution_csv(&trace),
                )?;
                write_file(
                    &cfg.out_dir,
                    &format!("edges_{}.csv", strategy.name()),
                    &edges_csv(&trace, &g),
                )?;
                if trace.exhausted {
                    eprintln!("warning: {strategy} exhausted its candidates");
                    first_failure.get_or_insert(exit_code::EXHAUSTED);
                }
                traces.push(trace);
            }
            Err(err) => {
                eprintln!("error: strategy {strategy} failed: {err}");
                first_failure.get_or_insert(exit_code_for(&err));
            }
        }
    }
    write_file(&cfg.out_dir, "pareto.csv", &pareto_csv(&traces))?;

    println!(
        "{:<12} {:>12} {:>11} {:>10}",
        "", "d_isolation", "d_diameter", "d_control"
    );
    if let Some(first) = traces.first() {
        println!("{}", disparity_row("original", &first.snapshots[0].disparities));
    }
    for trace in &traces {
        println!(
            "{}",
            disparity_row(
                trace.strategy.name(),
                &trace.snapshots.last().unwrap().disparities
            )
        );
    }
    Ok(first_failure.unwrap_or(exit_code::OK))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
        let path = dir.join(name);
        std::fs::write(&path, content).unwrap();
        path
    }

    /// Star with known-attribute leaves; center unknown.
    fn fixture(dir: &Path) -> (PathBuf, PathBuf) {
        let edges = write(dir, "g.edges", "hub,a\nhub,b\nhub,c\nhub,d\na,b\n");
        let attrs = write(
            dir,
            "g.attrs",
            "node,team\nhub,\na,red\nb,red\nc,blue\nd,blue\n",
        );
        (edges, attrs)
    }

    #[test]
    fn analyze_writes_outputs_and_succeeds() {
        let dir = tempfile::tempdir().unwrap();
        let (edges, attrs) = fixture(dir.path());
        let mut cfg = RunConfig::new(Command::Analyze, edges, attrs, "team".into());
        cfg.out_dir = dir.path().join("out");
        assert_eq!(execute(&cfg), exit_code::OK);
        let json = std::fs::read_to_string(cfg.out_dir.join("metrics.json")).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["summary"]["node_count"], 5);
        assert_eq!(parsed["excluded_nodes"], 1);
        let csv = std::fs::read_to_string(cfg.out_dir.join("metrics.csv")).unwrap();
        assert!(csv.starts_with("group,isolation,diameter,control,d_isolation,d_diameter,d_control"));
    }

    #[test]
    fn analyze_missing_attr_file_fails_validation_without_outputs() {
        let dir = tempfile::tempdir().unwrap();
        let edges = write(dir.path(), "g.edges", "a,b\n");
        let mut cfg = RunConfig::new(
            Command::Analyze,
            edges,
            dir.path().join("missing.attrs"),
            "team".into(),
        );
        cfg.out_dir = dir.path().join("out");
        assert_eq!(execute(&cfg), exit_code::INPUT);
        assert!(!cfg.out_dir.join("metrics.json").exists());
    }

    #[test]
    fn analyze_single_group_rejected_with_group_code() {
        let dir = tempfile::tempdir().unwrap();
        let edges = write(dir.path(), "g.edges", "a,b\nb,c\n");
        let attrs = write(dir.path(), "g.attrs", "node,team\na,red\nb,red\nc,red\n");
        let mut cfg = RunConfig::new(Command::Analyze, edges, attrs, "team".into());
        cfg.out_dir = dir.path().join("out");
        assert_eq!(execute(&cfg), exit_code::GROUPS);
    }

    #[test]
    fn existing_output_needs_force() {
        let dir = tempfile::tempdir().unwrap();
        let (edges, attrs) = fixture(dir.path());
        let mut cfg = RunConfig::new(Command::Analyze, edges, attrs, "team".into());
        cfg.out_dir = dir.path().join("out");
        std::fs::create_dir_all(&cfg.out_dir).unwrap();
        std::fs::write(cfg.out_dir.join("metrics.json"), "old").unwrap();
        assert_eq!(execute(&cfg), exit_code::OUTPUT_EXISTS);
        assert_eq!(
            std::fs::read_to_string(cfg.out_dir.join("metrics.json")).unwrap(),
            "old"
        );
        cfg.force = true;
        assert_eq!(execute(&cfg), exit_code::OK);
        assert_ne!(
            std::fs::read_to_string(cfg.out_dir.join("metrics.json")).unwrap(),
            "old"
        );
    }

    #[test]
    fn intervene_budget_zero_matches_analyze_metrics() {
        let dir = tempfile::tempdir().unwrap();
        let (edges, attrs) = fixture(dir.path());
        let mut acfg = RunConfig::new(Command::Analyze, edges.clone(), attrs.clone(), "team".into());
        acfg.out_dir = dir.path().join("analyze");
        assert_eq!(execute(&acfg), exit_code::OK);

        let mut icfg = RunConfig::new(Command::Intervene, edges, attrs, "team".into());
        icfg.out_dir = dir.path().join("intervene");
        icfg.strategies = vec![Strategy::Erg];
        icfg.budget = 0;
        assert_eq!(execute(&icfg), exit_code::OK);

        let a = std::fs::read_to_string(acfg.out_dir.join("metrics.csv")).unwrap();
        let b = std::fs::read_to_string(icfg.out_dir.join("metrics.csv")).unwrap();
        assert_eq!(a, b);
        let edges_out = std::fs::read_to_string(icfg.out_dir.join("edges.csv")).unwrap();
        assert_eq!(edges_out, "step,u_ext,v_ext,score\n");
    }

    #[test]
    fn intervene_writes_trace_and_reports_exhaustion() {
        let dir = tempfile::tempdir().unwrap();
        let (edges, attrs) = fixture(dir.path());
        let mut cfg = RunConfig::new(Command::Intervene, edges, attrs, "team".into());
        cfg.out_dir = dir.path().join("out");
        cfg.strategies = vec![Strategy::Erg];
        cfg.budget = 100; // far beyond the candidate count
        assert_eq!(execute(&cfg), exit_code::EXHAUSTED);
        assert!(cfg.out_dir.join("edges.csv").exists());
        assert!(cfg.out_dir.join("evolution.csv").exists());
    }

    #[test]
    fn intervene_edges_csv_reloads_as_edge_list() {
        let dir = tempfile::tempdir().unwrap();
        let (edges, attrs) = fixture(dir.path());
        let mut cfg = RunConfig::new(Command::Intervene, edges, attrs, "team".into());
        cfg.out_dir = dir.path().join("out");
        cfg.strategies = vec![Strategy::Erg];
        cfg.budget = 3;
        assert_eq!(execute(&cfg), exit_code::OK);
        let text = std::fs::read_to_string(cfg.out_dir.join("edges.csv")).unwrap();
        let (g, _) = crate::graph::load_graph_from_strings(&text, "node,x\n", "x").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn compare_runs_strategies_and_merges_pareto() {
        let dir = tempfile::tempdir().unwrap();
        let (edges, attrs) = fixture(dir.path());
        let mut cfg = RunConfig::new(Command::Compare, edges, attrs, "team".into());
        cfg.out_dir = dir.path().join("out");
        cfg.strategies = vec![Strategy::Erg, Strategy::Random, Strategy::Cos];
        cfg.budget = 2;
        cfg.seed = 5;
        assert_eq!(execute(&cfg), exit_code::OK);
        for name in ["evolution_erg.csv", "evolution_random.csv", "evolution_cos.csv"] {
            assert!(cfg.out_dir.join(name).exists(), "{name} missing");
        }
        let pareto = std::fs::read_to_string(cfg.out_dir.join("pareto.csv")).unwrap();
        for label in ["erg,", "random,", "cos,"] {
            assert!(pareto.contains(label));
        }
    }

    #[test]
    fn repeat_runs_are_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let (edges, attrs) = fixture(dir.path());
        let mut cfg = RunConfig::new(Command::Compare, edges, attrs, "team".into());
        cfg.strategies = vec![Strategy::Erg, Strategy::Random];
        cfg.budget = 3;
        cfg.seed = 9;
        cfg.out_dir = dir.path().join("run1");
        assert_eq!(execute(&cfg), exit_code::OK);
        let mut cfg2 = cfg.clone();
        cfg2.out_dir = dir.path().join("run2");
        assert_eq!(execute(&cfg2), exit_code::OK);
        for name in ["evolution_erg.csv", "evolution_random.csv", "edges_erg.csv", "pareto.csv"] {
            let a = std::fs::read(cfg.out_dir.join(name)).unwrap();
            let b = std::fs::read(cfg2.out_dir.join(name)).unwrap();
            assert_eq!(a, b, "{name} differs between identical runs");
        }
    }

    #[test]
    fn cache_round_trip_preserves_analysis() {
        let dir = tempfile::tempdir().unwrap();
        let (edges, attrs) = fixture(dir.path());
        std::env::set_var(CACHE_DIR_ENV, dir.path().join("cache"));
        let mut cfg = RunConfig::new(Command::Analyze, edges, attrs, "team".into());
        cfg.use_cache = true;
        cfg.out_dir = dir.path().join("out1");
        assert_eq!(execute(&cfg), exit_code::OK);
        let mut cfg2 = cfg.clone();
        cfg2.out_dir = dir.path().join("out2");
        assert_eq!(execute(&cfg2), exit_code::OK);
        std::env::remove_var(CACHE_DIR_ENV);
        let a = std::fs::read_to_string(cfg.out_dir.join("metrics.csv")).unwrap();
        let b = std::fs::read_to_string(cfg2.out_dir.join("metrics.csv")).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn file_config_parses_and_rejects_unknown_keys() {
        let dir = tempfile::tempdir().unwrap();
        let path = write(
            dir.path(),
            "run.toml",
            "edges = \"g.edges\"\nattrs = \"g.attrs\"\nattr = \"team\"\nstrategy = [\"erg\"]\nbudget = 5\nseed = 3\n",
        );
        let fc = FileConfig::load(&path).unwrap();
        assert_eq!(fc.budget, Some(5));
        assert_eq!(fc.strategy.as_deref(), Some(&["erg".to_string()][..]));

        let bad = write(dir.path(), "bad.toml", "budgett = 5\n");
        assert!(FileConfig::load(&bad).is_err());
    }
}
