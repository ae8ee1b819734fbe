//! Command implementations. Each writes to the given sink and returns the
//! process exit code.

use std::io::{self, Write};
use std::net::{SocketAddr, ToSocketAddrs};

use thiserror::Error;

use rit_core::solver::{
    analyze, cgh_check, conway_pair, verify_theorems, CghReport, VerificationReport, VerifyOptions,
};
use rit_core::{enumerate_partitions, parse_partition, Decomposition, Partition, PartitionError};
use rit_service::ServiceConfig;

use crate::{
    AnalyzeArgs, CghArgs, Cli, Command, EnumerateArgs, Family, ReportFormat, ServeArgs, TableFormat, VerifyArgs,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_UNCONFIRMED: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid partition {input:?}: {source}")]
    Partition { input: String, source: PartitionError },

    #[error("--max-n {max_n} exceeds the oracle bound {bound}; raise it with --oracle-max-n or RIT_ORACLE_MAX_N")]
    OracleBound { max_n: u32, bound: u32 },

    #[error("cannot resolve listen address {0}")]
    Address(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub fn parse_position(text: &str) -> Result<Partition, CliError> {
    parse_partition(text).map_err(|source| CliError::Partition { input: text.to_string(), source })
}

pub fn run(cli: Cli, out: &mut impl Write) -> Result<u8, CliError> {
    let bound = cli.oracle_max_n;
    match cli.command {
        Command::Analyze(args) => analyze_cmd(&args, out),
        Command::Enumerate(args) => enumerate_cmd(&args, out),
        Command::Verify(args) => verify_cmd(&args, bound, out),
        Command::Cgh(args) => cgh_cmd(&args, bound, out),
        Command::Family(Family::Staircase { max_m, format }) => {
            let positions: Vec<Partition> = (0..=max_m).map(Partition::staircase).collect();
            write_positions(&positions, format, out)?;
            Ok(EXIT_OK)
        }
        Command::Play(args) => {
            let start = parse_position(&args.start)?;
            let stdin = io::stdin();
            crate::play::run(start, args.convention.get(), args.engine_first, &mut stdin.lock(), out)?;
            Ok(EXIT_OK)
        }
        Command::Serve(args) => serve_cmd(&args, out),
    }
}

fn analyze_cmd(args: &AnalyzeArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let position = parse_position(&args.partition)?;
    let report = analyze(&position, args.convention.get());
    match args.format {
        ReportFormat::Human => write!(out, "{}", report.render_human())?,
        ReportFormat::Json => writeln!(out, "{}", report.to_json())?,
    }
    Ok(EXIT_OK)
}

fn enumerate_cmd(args: &EnumerateArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let positions: Vec<Partition> = enumerate_partitions(args.n, args.max_rows).collect();
    write_positions(&positions, args.format, out)?;
    Ok(EXIT_OK)
}

fn heaps(h: &[u32]) -> String {
    format!("({})", h.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
}

/// One line per position: text form, weight, core, remnant, Conway pair.
fn write_positions(positions: &[Partition], format: TableFormat, out: &mut impl Write) -> Result<(), CliError> {
    match format {
        TableFormat::Human => {
            let width = positions.iter().map(|p| p.to_string().len()).max().unwrap_or(0).max(9);
            writeln!(out, "{:<width$}  {:>6}  {:<width$}  {:<12}  pair", "partition", "weight", "core", "remnant")?;
            for p in positions {
                let d = Decomposition::of(p);
                writeln!(
                    out,
                    "{:<width$}  {:>6}  {:<width$}  {:<12}  {}",
                    p.to_string(),
                    p.weight(),
                    d.core.as_partition().to_string(),
                    heaps(d.rem.heaps()),
                    conway_pair(p)
                )?;
            }
        }
        TableFormat::Csv => {
            let mut writer = csv::Writer::from_writer(&mut *out);
            writer.write_record(["partition", "weight", "rows", "core", "rem", "normal", "misere"])?;
            for p in positions {
                let d = Decomposition::of(p);
                let pair = conway_pair(p);
                writer.write_record([
                    p.to_string(),
                    p.weight().to_string(),
                    p.rows().to_string(),
                    d.core.as_partition().to_string(),
                    heaps(d.rem.heaps()),
                    pair.normal.to_string(),
                    pair.misere.to_string(),
                ])?;
            }
            writer.flush()?;
        }
        TableFormat::Json => {
            let rows: Vec<serde_json::Value> = positions
                .iter()
                .map(|p| {
                    let d = Decomposition::of(p);
                    serde_json::json!({
                        "partition": p,
                        "weight": p.weight(),
                        "core": d.core,
                        "rem": d.rem,
                        "pair": conway_pair(p),
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("values serialize"))?;
        }
    }
    Ok(())
}

fn check_bound(max_n: u32, bound: u32) -> Result<(), CliError> {
    if max_n > bound {
        return Err(CliError::OracleBound { max_n, bound });
    }
    Ok(())
}

fn verify_cmd(args: &VerifyArgs, bound: u32, out: &mut impl Write) -> Result<u8, CliError> {
    check_bound(args.max_n, bound)?;
    let jobs = args.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let options = VerifyOptions::new(args.max_n, args.convention).max_rows(args.max_rows).jobs(jobs);
    let report = verify_theorems(options);
    match args.format {
        TableFormat::Human => write_verify_human(&report, out)?,
        TableFormat::Csv => write!(out, "{}", report.to_csv())?,
        TableFormat::Json => writeln!(out, "{}", report.to_json())?,
    }
    Ok(if report.is_clean() { EXIT_OK } else { EXIT_UNCONFIRMED })
}

fn write_verify_human(report: &VerificationReport, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{:>4}  {:>9}  {:>10}  {:>10}", "n", "positions", "mismatches", "ms")?;
    for row in &report.rows {
        writeln!(out, "{:>4}  {:>9}  {:>10}  {:>10.1}", row.n, row.positions, row.mismatches, row.elapsed_ms)?;
    }
    for c in report.counterexamples.iter().take(10) {
        writeln!(out, "mismatch: {} ({}) oracle {} formula {}", c.position, c.convention, c.oracle, c.formula)?;
    }
    writeln!(out, "{}", report.summary())
}

fn cgh_cmd(args: &CghArgs, bound: u32, out: &mut impl Write) -> Result<u8, CliError> {
    check_bound(args.max_n, bound)?;
    let report = cgh_check(args.max_n, args.max_rows);
    match args.format {
        TableFormat::Human => write_cgh_human(&report, out)?,
        TableFormat::Csv => write!(out, "{}", report.to_csv())?,
        TableFormat::Json => writeln!(out, "{}", report.to_json())?,
    }
    Ok(if report.confirms_expected() { EXIT_OK } else { EXIT_UNCONFIRMED })
}

fn write_cgh_human(report: &CghReport, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{} ({} positions)", report.scope, report.positions)?;
    for (name, check) in [("forced", &report.forced), ("miserable", &report.miserable)] {
        for v in check.violations.iter().take(5) {
            writeln!(out, "{name} violation: {} {}: {}", v.position, v.pair, v.detail)?;
        }
        if check.violations.len() > 5 {
            writeln!(out, "{name}: {} violations in total", check.violations.len())?;
        }
    }
    writeln!(out, "{}", report.summary())?;
    let expected = report.expected();
    let verdict = |holds: bool| if holds { "PASS" } else { "FAIL" };
    writeln!(
        out,
        "expected: forced: {}, miserable: {}, pet: {}",
        verdict(expected.forced),
        verdict(expected.miserable),
        expected.pet.map_or("undetermined at this size", verdict)
    )?;
    let confirmed = if report.confirms_expected() { "confirmed" } else { "NOT confirmed" };
    writeln!(out, "classification {confirmed}")
}

fn serve_cmd(args: &ServeArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let target = format!("{}:{}", args.host, args.port);
    let addr: SocketAddr = target
        .to_socket_addrs()
        .map_err(|_| CliError::Address(target.clone()))?
        .next()
        .ok_or_else(|| CliError::Address(target.clone()))?;
    let config = ServiceConfig { static_dir: args.static_dir.clone(), snapshot: args.snapshot.clone() };
    writeln!(out, "listening on http://{addr}")?;
    out.flush()?;
    let runtime = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    runtime.block_on(rit_service::serve(addr, &config))?;
    Ok(EXIT_OK)
}
