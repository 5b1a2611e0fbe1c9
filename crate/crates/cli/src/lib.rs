//! The `biberkit` command line: tag, profile, export-labels, pca, verify,
//! bench, list-features and synth over a shared run configuration.

pub mod bench;
pub mod commands;
pub mod config;
mod error;
pub mod run;

use std::ffi::OsString;
use std::io::Write;

use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, Subcommand};
use log::info;

pub use config::{GlobalArgs, RunConfig};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "biberkit", version, about = "Stylistic feature tagging, profiling, PCA and authorship verification")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tokens with tags and fired features, one JSON line per document
    Tag,
    /// One profile row per document
    Profile,
    /// Per-chunk feature presence, one JSON line per chunk
    ExportLabels,
    /// Principal components of a profile matrix
    Pca(commands::PcaArgs),
    /// Train and evaluate a same-author classifier on text pairs
    Verify(commands::VerifyArgs),
    /// Throughput per stage and across thread counts
    Bench(bench::BenchArgs),
    /// The feature inventory
    ListFeatures,
    /// Write a synthetic two-style corpus or pair set
    Synth(commands::SynthArgs),
}

/// Matches holding the global options as the user gave them: those of the
/// subcommand when there is one (globals propagate down to it).
fn leaf(m: &ArgMatches) -> &ArgMatches {
    match m.subcommand() {
        Some((_, sub)) => leaf(sub),
        None => m,
    }
}

/// Parse `args` and run. Data goes to `--output` or `stdout`; counts and
/// summaries go to `stderr`.
pub fn run_from(args: impl IntoIterator<Item = impl Into<OsString> + Clone>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let matches = match Cli::command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            write!(stdout, "{e}")?;
            return Ok(());
        }
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            return Err(CliError::new("usage", first));
        }
    };
    let cli = Cli::from_arg_matches(&matches).map_err(|e| CliError::new("usage", e.to_string()))?;
    let cfg = RunConfig::resolve(&cli.global, Some(leaf(&matches)))?;
    if cli.global.print_config {
        write!(stdout, "{}", cfg.render())?;
        return Ok(());
    }
    let Some(command) = cli.command else {
        return Err(CliError::new("usage", "a subcommand is required; see --help"));
    };
    execute(&cfg, &command, stdout)
}

fn with_output<T>(cfg: &RunConfig, stdout: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> Result<T, CliError>) -> Result<T, CliError> {
    match &cfg.output {
        Some(_) => {
            let mut w = run::open_output(cfg.output.as_deref())?;
            let r = f(&mut *w)?;
            w.flush()?;
            Ok(r)
        }
        None => f(stdout),
    }
}

pub fn execute(cfg: &RunConfig, command: &Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    let report = |s: commands::CorpusSummary| {
        info!("{} documents, {} tokens, {} skipped", s.documents, s.tokens, s.skipped);
        eprintln!("documents: {}  tokens: {}  skipped: {}", s.documents, s.tokens, s.skipped);
    };
    match command {
        Command::Tag => report(with_output(cfg, stdout, |w| commands::cmd_tag(cfg, w))?),
        Command::Profile => report(with_output(cfg, stdout, |w| commands::cmd_profile(cfg, w))?),
        Command::ExportLabels => report(with_output(cfg, stdout, |w| commands::cmd_export_labels(cfg, w))?),
        Command::Pca(a) => {
            let summary = commands::cmd_pca(cfg, a)?;
            writeln!(stdout, "{}", serde_json::to_string_pretty(&summary).expect("json value"))?;
        }
        Command::Verify(a) => {
            let metrics = commands::cmd_verify(cfg, a)?;
            writeln!(stdout, "{metrics}")?;
        }
        Command::Bench(a) => {
            let r = bench::cmd_bench(cfg, a)?;
            with_output(cfg, stdout, |w| Ok(bench::write_report(&r, a.json, w)?))?;
        }
        Command::ListFeatures => with_output(cfg, stdout, commands::cmd_list_features)?,
        Command::Synth(a) => with_output(cfg, stdout, |w| commands::cmd_synth(cfg, a, w))?,
    }
    Ok(())
}
