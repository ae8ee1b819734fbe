//! `rit`: analyze, enumerate and verify RIT positions, play against the
//! engine, or run the HTTP service.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when `verify`
//! finds a mismatch or `cgh` does not confirm the expected classification.

mod commands;
mod play;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rit_core::solver::DEFAULT_ORACLE_MAX_WEIGHT;
use rit_core::{Convention, ConventionSelection};

#[derive(Debug, Parser)]
#[command(name = "rit", version, about = "Row Impartial Terminus: exact analysis and play")]
pub struct Cli {
    /// Largest weight the brute-force oracle accepts.
    #[arg(long, global = true, env = "RIT_ORACLE_MAX_N", default_value_t = DEFAULT_ORACLE_MAX_WEIGHT)]
    pub oracle_max_n: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decomposition, Conway pair, outcome and winning moves of one position.
    Analyze(AnalyzeArgs),
    /// List every partition of n with its remnant and Conway pair.
    Enumerate(EnumerateArgs),
    /// Compare the brute-force oracle with the remnant formula for all n <= max-n.
    Verify(VerifyArgs),
    /// Check the forced, miserable and pet classes for all n <= max-n.
    Cgh(CghArgs),
    /// Analyze a family of positions.
    #[command(subcommand)]
    Family(Family),
    /// Play against the engine on the terminal.
    Play(PlayArgs),
    /// Run the HTTP/JSON service.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct ConventionArg {
    /// Play convention.
    #[arg(long, value_name = "normal|misere", default_value = "normal", conflicts_with = "misere")]
    pub convention: Convention,

    /// Shorthand for `--convention misere`.
    #[arg(long)]
    pub misere: bool,
}

impl ConventionArg {
    pub fn get(&self) -> Convention {
        if self.misere {
            Convention::Misere
        } else {
            self.convention
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Human,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Position such as `[5,4,2,1]`; `[]` is the empty partition.
    pub partition: String,
    #[command(flatten)]
    pub convention: ConventionArg,
    #[arg(long, value_enum, default_value_t = ReportFormat::Human)]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub max_rows: Option<usize>,
    #[arg(long, value_enum, default_value_t = TableFormat::Human)]
    pub format: TableFormat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub max_n: u32,
    #[arg(long, value_name = "normal|misere|both", default_value = "both")]
    pub convention: ConventionSelection,
    #[arg(long)]
    pub max_rows: Option<usize>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = TableFormat::Human)]
    pub format: TableFormat,
}

#[derive(Debug, Args)]
pub struct CghArgs {
    #[arg(long)]
    pub max_n: u32,
    #[arg(long)]
    pub max_rows: Option<usize>,
    #[arg(long, value_enum, default_value_t = TableFormat::Human)]
    pub format: TableFormat,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Staircases ⟨m, m-1, …, 1⟩ for m = 0..=max-m.
    Staircase {
        #[arg(long)]
        max_m: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Human)]
        format: TableFormat,
    },
}

#[derive(Debug, Args)]
pub struct PlayArgs {
    #[command(flatten)]
    pub convention: ConventionArg,
    /// Let the engine make the first move.
    #[arg(long)]
    pub engine_first: bool,
    /// Start position; defaults to `[5,4,2,1]`.
    #[arg(long, default_value = "[5,4,2,1]")]
    pub start: String,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    /// Directory holding the web board bundle.
    #[arg(long)]
    pub static_dir: Option<PathBuf>,
    /// JSON-lines file to restore sessions from and append them to.
    #[arg(long)]
    pub snapshot: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = commands::run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
