use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ellfib_cli::{commands, CliError, Manifest, Report, Result};

#[derive(Parser)]
#[command(name = "ellfib", version, about = "Exact tools for elliptic fibrations over Q(t)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// TOML manifest describing the surface.
    #[arg(long)]
    manifest: PathBuf,
    /// Also write the report as JSON to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Fiber configuration, Euler number, class and Shioda-Tate bounds.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Prime bound for the Nagao average.
        #[arg(long)]
        primes: Option<u64>,
    },
    /// Predicted and recomputed fibers of a base change.
    Basechange {
        #[command(flatten)]
        common: Common,
    },
    /// Can a K3 fiber multiset come from a rational surface by a quadratic base change?
    Quadorigin {
        /// Multiset such as "6*I4" or "2*III* + I6*".
        multiset: String,
        /// Treat the list as a partial list of the bad fibers.
        #[arg(long)]
        partial: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Gram matrix of the height pairing on the manifest's sections.
    Heights {
        #[command(flatten)]
        common: Common,
    },
    /// Push multiples of a point on a second fibration to fibers of the first.
    Scan {
        #[command(flatten)]
        common: Common,
        /// Also search each scanned fiber for points of naive height up to this bound.
        #[arg(long)]
        height_bound: Option<u64>,
    },
}

fn emit(report: &Report, json_path: Option<&Path>) -> Result<()> {
    print!("{}", report.text);
    if let Some(path) = json_path {
        let mut s = serde_json::to_string_pretty(&report.json).expect("JSON values always serialize");
        s.push('\n');
        std::fs::write(path, s).map_err(|source| CliError::Write { path: path.into(), source })?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze { common, primes } => {
            let m = Manifest::load(&common.manifest)?;
            emit(&commands::analyze(&m, primes)?, common.json.as_deref())
        }
        Command::Basechange { common } => {
            let m = Manifest::load(&common.manifest)?;
            emit(&commands::basechange(&m)?, common.json.as_deref())
        }
        Command::Quadorigin { multiset, partial, json } => emit(&commands::quadorigin(&multiset, partial)?, json.as_deref()),
        Command::Heights { common } => {
            let m = Manifest::load(&common.manifest)?;
            emit(&commands::heights(&m)?, common.json.as_deref())
        }
        Command::Scan { common, height_bound } => {
            let m = Manifest::load(&common.manifest)?;
            emit(&commands::scan(&m, height_bound)?, common.json.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
