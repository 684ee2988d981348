//! `legrid`: invariants of Legendrian links given as grid diagrams.
//!
//! Every verb prints one JSON document on stdout. Failures print
//! `{"error":{…}}` on stderr and exit with 1 (domain error) or 2 (usage).

mod error;
mod pretty;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use legrid_core::Sign;

use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "legrid", version, about = "Legendrian grid diagram invariants")]
struct Cli {
    /// Print human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// tb, rotation and self-linking numbers of each component.
    Inv {
        grid: PathBuf,
        /// Report only this component.
        #[arg(long)]
        component: Option<usize>,
    },
    /// Relative invariants of a component pair.
    Rel {
        grid: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Run a move script and report invariants after every step.
    Moves {
        grid: PathBuf,
        script: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Evaluate how the relative invariants change between two surface classes.
    Ledger {
        model: PathBuf,
        /// Closed-class offset of the first surface (default all zeros).
        #[arg(long, value_parser = parse_offsets, allow_hyphen_values = true)]
        from: Option<Offsets>,
        /// Closed-class offset of the second surface (default all zeros).
        #[arg(long, value_parser = parse_offsets, allow_hyphen_values = true)]
        to: Option<Offsets>,
    },
    /// Replay a crossing event script.
    CrossSim {
        events: PathBuf,
        /// Start from the relative invariants of this grid's `--pair`.
        #[arg(long)]
        grid: Option<PathBuf>,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Run the seeded property suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cases per randomized check.
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

#[derive(Debug, Args)]
struct PairArgs {
    /// Components `K,J`; defaults to `0,1`.
    #[arg(long, value_parser = parse_pair)]
    pair: Option<(usize, usize)>,
    /// Orientation of the bounding surface.
    #[arg(long, value_parser = parse_sign, allow_hyphen_values = true, default_value = "+")]
    orient: Sign,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected `<i>,<j>`")?;
    let idx = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("`{t}` is not a component index"))
    };
    Ok((idx(a)?, idx(b)?))
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Comma-separated integers, one per generator of the closed classes.
#[derive(Debug, Clone)]
struct Offsets(Vec<i64>);

fn parse_offsets(s: &str) -> Result<Offsets, String> {
    if s.trim().is_empty() {
        return Ok(Offsets(Vec::new()));
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("`{t}` is not an integer")))
        .collect::<Result<_, _>>()
        .map(Offsets)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            return CliError::usage(e.render().to_string().trim()).emit();
        }
    };
    match run::run(cli.command, cli.pretty) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => e.emit(),
    }
}
