//! Thin command-line front end; all logic lives in the library's `cli`
//! module. Exit codes: 0 success, 1 usage error, 2 data error, 3 internal.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use onubhuti::cli::{self, AppConfig, Overrides};

#[derive(Parser)]
#[command(
    name = "onubhuti",
    about = "Multi-label emotion classification for Bangla social-media text",
    version
)]
struct Cli {
    /// TOML configuration file; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override the split seed and every model/LIME seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Override the output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Abort on the first bad dataset row instead of rejecting it.
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dataset statistics report.
    Stats,
    /// Write the deterministic train/validation/test split manifest.
    Split,
    /// Train the configured model and persist it with its metrics.
    Train,
    /// Evaluate a persisted model artifact on one subset.
    Evaluate {
        /// Model artifact written by `train` or `sweep`.
        #[arg(long)]
        model: PathBuf,
        /// Subset to score: train, validation or test.
        #[arg(long, default_value = "test")]
        subset: String,
    },
    /// Explain one emotion decision on one text.
    Explain {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        text: String,
        /// Emotion label: love, joy, surprise, anger, sadness or fear.
        #[arg(long)]
        label: String,
    },
    /// Run the full experiment grid and write the result tables.
    Sweep,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> onubhuti::Result<()> {
    let mut config = AppConfig::load(cli.config.as_deref())?;
    config.apply_overrides(&Overrides {
        seed: cli.seed,
        out: cli.out,
    });
    match cli.command {
        Command::Stats => {
            cli::run_stats(&config, cli.strict)?;
        }
        Command::Split => {
            cli::run_split(&config, cli.strict)?;
        }
        Command::Train => {
            cli::run_train(&config, cli.strict)?;
        }
        Command::Evaluate { model, subset } => {
            cli::run_evaluate(&config, &model, &subset, cli.strict)?;
        }
        Command::Explain { model, text, label } => {
            cli::run_explain(&config, &model, &text, &label)?;
        }
        Command::Sweep => {
            cli::run_sweep(&config, cli.strict)?;
        }
    }
    Ok(())
}
