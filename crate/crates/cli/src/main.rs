use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mediated_cli::{capacities_command, run_command, witness_command, CliError};
use mediated_core::correlations::MeasureKind;
use mediated_core::Execution;

/// Correlation dynamics of two probes coupled through a mediator.
#[derive(Parser)]
#[command(name = "mediated", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and write its trajectory CSV.
    Run {
        config: PathBuf,
        /// Evaluate samples on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Smallest mediator dimension consistent with an observed correlation.
    Witness {
        #[arg(value_parser = parse_measure)]
        measure: MeasureKind,
        #[arg(allow_negative_numbers = true)]
        value: f64,
    },
    /// Correlation capacities of a mediator of dimension d_C.
    Capacities { d_c: usize },
}

fn parse_measure(s: &str) -> Result<MeasureKind, String> {
    s.parse().map_err(|e: mediated_core::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result: Result<String, CliError> = match cli.command {
        Command::Run { config, sequential } => {
            let exec = if sequential { Execution::Sequential } else { Execution::default() };
            run_command(&config, exec)
        }
        Command::Witness { measure, value } => witness_command(measure, value).map(|s| s + "\n"),
        Command::Capacities { d_c } => capacities_command(d_c),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
