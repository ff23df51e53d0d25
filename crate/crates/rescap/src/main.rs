//! Command-line front end; all logic lives in [`rescap::cli`].

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rescap::cli::{self, Command, FileConfig, RunConfig};
use rescap::intervention::Strategy;

#[derive(Parser)]
#[command(
    name = "rescap",
    version,
    about = "Group social capital and structural group unfairness via effective resistance"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute group metrics and disparities for a graph as-is
    Analyze(CommonArgs),
    /// Add a budget of edges with one strategy, tracing the evolution
    Intervene(CommonArgs),
    /// Run several strategies from the same input and merge a Pareto table
    Compare(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Edge-list file (two ids per line, `#` comments)
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Attribute table (CSV with `node,<attr>` header)
    #[arg(long)]
    attrs: Option<PathBuf>,
    /// Protected-attribute column name
    #[arg(long)]
    attr: Option<String>,
    /// Strategy: erg, random, cos, s-erg, s-cos, s-random (repeat or
    /// comma-separate for compare)
    #[arg(long, value_delimiter = ',')]
    strategy: Vec<String>,
    /// Number of edges to add
    #[arg(long)]
    budget: Option<usize>,
    /// Seed for randomized strategies
    #[arg(long)]
    seed: Option<u64>,
    /// Snapshot cadence in steps
    #[arg(long)]
    snapshot_every: Option<usize>,
    /// Incremental updates between full pseudo-inverse recomputes
    #[arg(long)]
    refresh_interval: Option<usize>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reuse/populate the pseudo-inverse cache (dir from RESCAP_CACHE_DIR)
    #[arg(long)]
    cache: bool,
    /// Overwrite existing output files
    #[arg(long)]
    force: bool,
    /// Declarative TOML config; explicit flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

fn resolve(command: Command, args: CommonArgs) -> Result<RunConfig, String> {
    let file = match &args.config {
        Some(path) => FileConfig::load(path).map_err(|e| e.to_string())?,
        None => FileConfig::default(),
    };
    let edges = args
        .edges
        .or(file.edges)
        .ok_or("missing --edges (or `edges` in the config file)")?;
    let attrs = args
        .attrs
        .or(file.attrs)
        .ok_or("missing --attrs (or `attrs` in the config file)")?;
    let attribute = args
        .attr
        .or(file.attr)
        .ok_or("missing --attr (or `attr` in the config file)")?;

    let strategy_names = if args.strategy.is_empty() {
        file.strategy.unwrap_or_default()
    } else {
        args.strategy
    };
    let mut strategies = Vec::with_capacity(strategy_names.len());
    for name in &strategy_names {
        strategies.push(Strategy::parse(name).map_err(|e| e.to_string())?);
    }

    let mut cfg = RunConfig::new(command, edges, attrs, attribute);
    cfg.strategies = strategies;
    cfg.budget = args.budget.or(file.budget).unwrap_or(0);
    cfg.seed = args.seed.or(file.seed).unwrap_or(0);
    cfg.snapshot_every = args.snapshot_every.or(file.snapshot_every).unwrap_or(1);
    cfg.refresh_interval = args
        .refresh_interval
        .or(file.refresh_interval)
        .unwrap_or(rescap::spectral::DEFAULT_REFRESH_INTERVAL);
    if let Some(out) = args.out.or(file.out) {
        cfg.out_dir = out;
    }
    cfg.use_cache = args.cache || file.cache.unwrap_or(false);
    cfg.force = args.force || file.force.unwrap_or(false);
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Analyze(args) => (Command::Analyze, args),
        Cmd::Intervene(args) => (Command::Intervene, args),
        Cmd::Compare(args) => (Command::Compare, args),
    };
    match resolve(command, args) {
        Ok(cfg) => ExitCode::from(cli::execute(&cfg) as u8),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(cli::exit_code::INPUT as u8)
        }
    }
}
