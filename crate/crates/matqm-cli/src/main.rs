//! Scenario runner for dissipative kaon dynamics.
//!
//! Exit status: 0 when the run's physical checks pass, 1 when it ran but a
//! physical check failed (reported in the output), 2 on configuration or
//! usage errors.

mod config;
mod output;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::ScenarioConfig;
use output::Format;

#[derive(Parser)]
#[command(
    name = "matqm",
    about = "Dissipative two-level (neutral kaon) dynamics: complete-positivity checks, evolution series, entangled-pair witnesses, Trotter studies and parameter sweeps",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct CommonArgs {
    /// Path to the JSON scenario configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the dissipative semigroup (CP / simply-positive /
    /// not-positive) with inequality margins and a Choi eigenvalue sweep.
    CheckCp(CommonArgs),
    /// Evolve a state over the time grid and emit Bloch components, trace,
    /// minimum eigenvalue and decay-rate columns.
    Evolve(CommonArgs),
    /// Entangled-pair witness values and the Trotter negative-mass bound
    /// over the time grid.
    TwoKaon(CommonArgs),
    /// Trotter convergence and bound study with doubling step counts.
    Trotter(CommonArgs),
    /// Parameter sweep of inequality margins and positivity verdicts.
    Sweep(CommonArgs),
}

impl Command {
    fn args(&self) -> &CommonArgs {
        match self {
            Command::CheckCp(a)
            | Command::Evolve(a)
            | Command::TwoKaon(a)
            | Command::Trotter(a)
            | Command::Sweep(a) => a,
        }
    }

    /// check-cp reports default to JSON; table commands default to CSV.
    fn default_format(&self) -> Format {
        match self {
            Command::CheckCp(_) => Format::Json,
            _ => Format::Csv,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args = cli.command.args();
    let format = match args.format {
        Some(FormatArg::Csv) => Format::Csv,
        Some(FormatArg::Json) => Format::Json,
        None => cli.command.default_format(),
    };

    let config = match ScenarioConfig::load(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(note) = &config.description {
        eprintln!("scenario: {note}");
    }

    let outcome = match &cli.command {
        Command::CheckCp(a) => run::check_cp(&config, format, &a.out),
        Command::Evolve(a) => run::evolve(&config, format, &a.out),
        Command::TwoKaon(a) => run::two_kaon(&config, format, &a.out),
        Command::Trotter(a) => run::trotter(&config, format, &a.out),
        Command::Sweep(a) => run::sweep(&config, format, &a.out),
    };

    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("physical checks failed (see report)");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
