//! `escape`: build Cassels-type lattices, scan their diagonal orbits and
//! certify unit indices from the command line.

mod commands;
mod config;
mod store;
mod svg;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CliError, Outcome, EXIT_CERTIFICATE};
use config::RunConfig;

#[derive(Parser)]
#[command(name = "escape", version, about = "Compact diagonal orbits of Cassels-type lattices")]
struct Cli {
    /// Print the machine-readable summary on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build x_m, its units and certificates; writes report.json.
    Construct(RunConfig),
    /// Sample ell(a(t) x) on a grid over the fundamental domain; writes scan.csv and heatmap.svg.
    Scan(RunConfig),
    /// Fraction of the orbit with ell >= delta.
    Mass {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
    },
    /// Connected components of the visit set and their nearest deep holes.
    Visits(RunConfig),
    /// Certify [Delta_x : Delta_Phi] = 1 and run the unit saturation oracle.
    Index {
        #[command(flatten)]
        config: RunConfig,
        /// Largest denominator tried by the oracle; defaults to n!.
        #[arg(long)]
        q: Option<usize>,
        /// Largest characteristic-polynomial coefficient decided by the oracle.
        #[arg(long)]
        h: Option<f64>,
    },
    /// Trend table over the family m = k m_0.
    Sweep {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-1,0,1")]
        direction: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        k: Vec<i64>,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Classes of deep holes in dimension d.
    Cosets {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Construct(c) => commands::cmd_construct(c),
        Command::Scan(c) => commands::cmd_scan(c),
        Command::Mass { config, delta } => commands::cmd_mass(config, *delta),
        Command::Visits(c) => commands::cmd_visits(c),
        Command::Index { config, q, h } => commands::cmd_index(config, *q, *h),
        Command::Sweep { config, direction, k, delta, jobs } => commands::cmd_sweep(config, direction, k, *delta, *jobs),
        Command::Cosets { d, out } => commands::cmd_cosets(*d, out.as_deref()),
    }
}

// A closed pipe (`escape ... | head`) is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if cli.json {
                emit(&serde_json::to_string_pretty(&outcome.summary).unwrap_or_default());
            } else {
                emit(&outcome.text);
            }
            if outcome.certificate_failure {
                ExitCode::from(EXIT_CERTIFICATE)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            if cli.json {
                emit(&serde_json::json!({ "error": e.message, "code": e.code }).to_string());
            }
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
