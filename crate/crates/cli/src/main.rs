//! `flagflux` command-line front end.

mod config;
mod error;
mod golden;
mod render;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{parse_index_list, CommandName, Format, JobConfig, RANK_BOUND_ENV};
use error::CliError;

#[derive(Parser)]
#[command(name = "flagflux", version, about = "Flowing flags and infinitesimal T-duality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Positive roots, complementary roots and summand dimensions.
    RootSystem(JobArgs),
    /// Malcev presentation of the nilradical with its root legend.
    Nilradical(JobArgs),
    /// Dualize a triple given by a flag or an explicit presentation.
    Dualize(JobArgs),
    /// Dualize a flowing flag and search for target flags.
    Correspond(JobArgs),
    /// Build the self-dual flux on a maximal flag and test self-duality.
    Selfdual(JobArgs),
    /// Transport per-root generalized complex blocks to the target flags.
    GcsTransport(JobArgs),
    /// Run every job file and compare against the stored reports.
    Golden(GoldenArgs),
}

#[derive(Args, Default)]
struct JobArgs {
    /// Cartan series; only A carries root data.
    #[arg(long)]
    series: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    /// Simple roots kept in the Levi factor, e.g. `1,3`.
    #[arg(long)]
    theta: Option<String>,
    /// Explicit Malcev tuple, e.g. `(0,0,-e^{12})`.
    #[arg(long)]
    algebra: Option<String>,
    /// Basis indices spanning the ideal, e.g. `4,5,6`.
    #[arg(long)]
    ideal: Option<String>,
    /// Isotropy summands whose span is the ideal.
    #[arg(long)]
    ideal_summands: Option<String>,
    /// Closed 3-form, e.g. `e^{123}`.
    #[arg(long)]
    flux: Option<String>,
    /// Largest rank searched for targets; falls back to $FLAGFLUX_RANK_BOUND.
    #[arg(long)]
    rank_bound: Option<usize>,
    /// Node budget for each isomorphism search.
    #[arg(long)]
    budget: Option<usize>,
    /// Per-root blocks as JSON, keyed by root.
    #[arg(long)]
    blocks: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// JSON job file; its values win over flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct GoldenArgs {
    /// Directory holding `jobs/` and `golden/`.
    #[arg(long, default_value = env!("CARGO_MANIFEST_DIR"))]
    dir: PathBuf,
    /// Rewrite the stored reports instead of comparing.
    #[arg(long)]
    bless: bool,
}

impl JobArgs {
    fn to_config(&self, command: CommandName) -> Result<JobConfig, CliError> {
        let list = |s: &Option<String>| s.as_deref().map(parse_index_list).transpose();
        let blocks = self
            .blocks
            .as_deref()
            .map(|s| serde_json::from_str(s).map_err(|e| CliError::Parse(format!("--blocks: {e}"))))
            .transpose()?;
        Ok(JobConfig {
            command: Some(command),
            series: self.series.clone(),
            rank: self.rank,
            theta: list(&self.theta)?,
            algebra: self.algebra.clone(),
            ideal: list(&self.ideal)?,
            ideal_summands: list(&self.ideal_summands)?,
            flux: self.flux.clone(),
            rank_bound: self.rank_bound,
            budget: self.budget,
            blocks,
            format: self.format,
        })
    }
}

fn run_job(command: CommandName, args: &JobArgs) -> Result<(String, Format), (CliError, Format)> {
    let fallback = args.format.unwrap_or_default();
    let flags = args.to_config(command).map_err(|e| (e, fallback))?;
    let merged = match &args.config {
        Some(path) => {
            let file = JobConfig::load(path).map_err(|e| (e, fallback))?;
            if file.command.is_some_and(|c| c != command) {
                eprintln!("warning: subcommand overridden by the config file");
            }
            let (merged, warnings) = flags.overlay(file);
            for w in warnings {
                eprintln!("warning: {w}");
            }
            merged
        }
        None => flags,
    };
    let format = merged.format.unwrap_or_default();
    let env = std::env::var(RANK_BOUND_ENV).ok();
    let job = merged.resolve(env.as_deref()).map_err(|e| (e, format))?;
    let report = report::run(&job).map_err(|e| (e, format))?;
    Ok((render::render(&report, format), format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Command::Golden(g) => return golden::run(&g.dir, g.bless),
        Command::RootSystem(a) => (CommandName::RootSystem, a),
        Command::Nilradical(a) => (CommandName::Nilradical, a),
        Command::Dualize(a) => (CommandName::Dualize, a),
        Command::Correspond(a) => (CommandName::Correspond, a),
        Command::Selfdual(a) => (CommandName::Selfdual, a),
        Command::GcsTransport(a) => (CommandName::GcsTransport, a),
    };
    match run_job(command, &args) {
        Ok((text, _)) => {
            print!("{text}");
            std::io::stdout().flush().ok();
            ExitCode::SUCCESS
        }
        Err((e, format)) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&e.to_json()).expect("serializable")),
                Format::Text => {}
            }
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
