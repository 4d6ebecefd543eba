//! `entweight`: entropic weights and convergence profiles of proofs.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CliError, Output, SubsetSource};

#[derive(Debug, Parser)]
#[command(name = "entweight", version, about = "Entropic weight of proofs in finite knowledge systems")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reproduce the bundled competition example end to end.
    Demo,
    /// Check a knowledge-system document and summarize it.
    Validate { path: PathBuf },
    /// Entropic weight of a formula set.
    Weight {
        path: PathBuf,
        /// Comma-separated formulas; commas inside parentheses do not split.
        #[arg(long, conflicts_with = "subset_file", required_unless_present = "subset_file")]
        subset: Option<String>,
        /// One formula per line.
        #[arg(long)]
        subset_file: Option<PathBuf>,
    },
    /// Maximal weights, certainty threshold and averages of proofs.
    Profile {
        path: PathBuf,
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        proof: Option<String>,
        /// Profile every proof.
        #[arg(long)]
        all: bool,
        /// Lift the proof length limit.
        #[arg(long)]
        allow_large: bool,
    },
    /// Shannon entropy of a rational distribution, e.g. `1/8,7/16,7/16`.
    Entropy {
        #[arg(long)]
        dist: String,
    },
    /// Check every proof against the rules of a world.
    Check {
        world: PathBuf,
        path: PathBuf,
        /// Require every intermediate formula to be listed.
        #[arg(long)]
        strict: bool,
    },
}

fn run(cli: &Cli, echo: String) -> Result<Output, CliError> {
    match &cli.command {
        Command::Demo => commands::demo_cmd(echo),
        Command::Validate { path } => commands::validate_cmd(echo, path),
        Command::Weight {
            path,
            subset,
            subset_file,
        } => {
            let source = match (subset, subset_file) {
                (Some(s), _) => SubsetSource::Inline(s),
                (None, Some(f)) => SubsetSource::File(f),
                (None, None) => unreachable!("clap requires one subset source"),
            };
            commands::weight_cmd(echo, path, source)
        }
        Command::Profile {
            path,
            proof,
            allow_large,
            ..
        } => commands::profile_cmd(echo, path, proof.as_deref(), *allow_large),
        Command::Entropy { dist } => commands::entropy_cmd(echo, dist),
        Command::Check { world, path, strict } => commands::check_cmd(echo, world, path, *strict),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match run(&cli, echo) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => out.json,
                Format::Table => out.table,
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("entweight: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
