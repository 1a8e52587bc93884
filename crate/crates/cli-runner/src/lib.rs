//! Batch runner for the identity suites, flows and secondary-class solves.
//!
//! One TOML file lists `[[scenario]]` tables; each subcommand runs the
//! scenarios of its kind and writes into `<out>/<name>/`.

pub mod config;
pub mod error;
pub mod flow;
pub mod hodge;
pub mod output;
pub mod report;
pub mod verify;

use clap::{Args, Parser, Subcommand};
use config::{Command, RunConfig, ScenarioConfig};
use error::CliError;
use output::ScenarioDir;
use rayon::prelude::*;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "cli-runner", version, about = "Run identity suites, anomaly flows and Hodge solves from a config file")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Identity suites and equation-of-motion reports.
    Verify(RunArgs),
    /// Flow time series with a termination footer.
    Flow(FlowArgs),
    /// Secondary classes and Aeppli representatives.
    Hodge(RunArgs),
    /// Two-column plot files from a finished flow run directory.
    Report { dir: PathBuf },
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Scenarios run concurrently on this many threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Replaces every seed in the config.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct FlowArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Continue the (single) flow scenario from this checkpoint.
    #[arg(long)]
    pub resume: Option<PathBuf>,
}

fn load(args: &RunArgs, command: Command) -> Result<RunConfig, CliError> {
    if args.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let mut cfg = RunConfig::load(&args.config)?;
    if let Some(s) = args.seed {
        cfg.override_seed(s);
    }
    if let Some(s) = cfg.scenarios.iter().find(|s| s.kind.command() != command) {
        return Err(CliError::Config(format!(
            "scenario `{}` of kind `{}` does not belong to this subcommand",
            s.name,
            s.kind.name()
        )));
    }
    Ok(cfg)
}

/// Runs every scenario on a pool of `jobs` threads and prints the summaries
/// in config order. The first failure in that order is returned.
fn run_all(
    cfg: &RunConfig,
    args: &RunArgs,
    f: impl Fn(&ScenarioConfig, &ScenarioDir) -> Result<String, CliError> + Sync,
) -> Result<(), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let results: Vec<Result<String, CliError>> = pool.install(|| {
        cfg.scenarios.par_iter().map(|s| f(s, &ScenarioDir::create(&args.out, &s.name)?)).collect()
    });
    let mut first = None;
    for (s, r) in cfg.scenarios.iter().zip(results) {
        match r {
            Ok(line) => println!("{line}"),
            Err(e) => {
                eprintln!("{}: {e}", s.name);
                first.get_or_insert(e);
            }
        }
    }
    first.map_or(Ok(()), Err)
}

pub fn report_dir(dir: &Path) -> Result<(), CliError> {
    for f in report::run(dir)? {
        println!("{}", dir.join(f).display());
    }
    Ok(())
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Sub::Verify(args) => {
            let cfg = load(&args, Command::Verify)?;
            run_all(&cfg, &args, |s, d| verify::run(&cfg, s, d))
        }
        Sub::Hodge(args) => {
            let cfg = load(&args, Command::Hodge)?;
            run_all(&cfg, &args, |s, d| hodge::run(&cfg, s, d))
        }
        Sub::Flow(FlowArgs { run: args, resume }) => {
            let cfg = load(&args, Command::Flow)?;
            if resume.is_some() && cfg.scenarios.len() != 1 {
                return Err(CliError::Usage("--resume needs a config with exactly one flow scenario".into()));
            }
            run_all(&cfg, &args, |s, d| flow::run(&cfg, s, d, resume.as_deref()))
        }
        Sub::Report { dir } => report_dir(&dir),
    }
}
