use std::process::ExitCode;
use std::thread;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use k3curves::bps::kkv_table;
use k3curves::checks::{self, CheckConfig, Suite};
use k3curves::combinat::DEFAULT_MAX_DEPTH;
use k3curves::k3counts::{gbl_series, yau_zaslow_series, TABLE1_P_MAX};
use k3curves::nl_stu::{discriminant_delta, kml_series, nl_number, NLQuery};
use k3curves::report::{table1_grid, table2_grid, CheckReport, Table, TableRow};
use k3curves::series::format_rational;

#[derive(Parser, Debug)]
#[command(
    name = "k3curves",
    version,
    about = "Curve-counting invariants of K3 surfaces, computed exactly"
)]
struct Cli {
    /// Truncation order; each command documents how it reads it.
    #[arg(long, global = true, value_parser = clap::value_parser!(i64).range(1..))]
    trunc: Option<i64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,

    /// Depth cap for the Cremona search.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEPTH)]
    depth: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Genus-g counts N_g^p laid out by p and δ = p − g.
    Table1 {
        #[arg(long, default_value_t = TABLE1_P_MAX, value_parser = clap::value_parser!(u32).range(1..=TABLE1_P_MAX as i64))]
        pmax: u32,
    },
    /// BPS numbers r_g^p for g ≤ p ≤ pmax.
    Table2 {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(0..=40))]
        pmax: u32,
    },
    /// Coefficients of the Yau–Zaslow series below --trunc (default 19).
    Yz,
    /// Coefficients N_g^p of the genus-g series below --trunc (default 19).
    Gbl {
        #[arg(long)]
        g: u32,
    },
    /// BPS numbers r_g^p in long form for p below --trunc (default 9).
    Kkv,
    /// The Noether–Lefschetz number NL_{p,(d1,d2)} of the STU model.
    Nl {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        d1: i64,
        #[arg(long, allow_negative_numbers = true)]
        d2: i64,
    },
    /// Genus-0 STU invariants N_{0,(d1,d2)} for 0 ≤ d1 ≤ d1max, 1 ≤ d2 ≤ d2max.
    Kml {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(0..))]
        d1max: i64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
        d2max: i64,
    },
    /// Runs one identity check suite, or all of them.
    Check {
        #[arg(value_parser = parse_selection)]
        suite: Selection,
    },
}

#[derive(Clone, Debug)]
enum Selection {
    All,
    One(Suite),
}

fn parse_selection(s: &str) -> std::result::Result<Selection, String> {
    if s == "all" {
        return Ok(Selection::All);
    }
    s.parse().map(Selection::One).map_err(|_| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("expected `all` or one of: {}", names.join(", "))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

/// Prints the command output; returns whether every check passed.
fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Table1 { pmax } => emit_table(&table1_grid(*pmax)?, cli.format),
        Command::Table2 { pmax } => emit_table(&table2_grid(*pmax)?, cli.format),
        Command::Yz => {
            let trunc = cli.trunc.unwrap_or(19);
            let s = yau_zaslow_series(trunc);
            let rows = (0..trunc).map(|p| vec![p.to_string(), format_rational(&s.coeff(p))]);
            emit_table(&long_table("p", &["N"], rows), cli.format)
        }
        Command::Gbl { g } => {
            let trunc = cli.trunc.unwrap_or(19);
            let s = gbl_series(*g as usize, trunc).series;
            let rows = (0..trunc).map(|p| vec![p.to_string(), format_rational(&s.coeff(p))]);
            emit_table(&long_table("p", &["N"], rows), cli.format)
        }
        Command::Kkv => {
            let p_max = u32::try_from(cli.trunc.unwrap_or(9) - 1)?;
            let t = kkv_table(p_max)?;
            let rows = t
                .iter()
                .map(|((g, _, p), r)| vec![g.to_string(), p.to_string(), format_rational(r)]);
            emit_table(&long_table("g", &["p", "r"], rows), cli.format)
        }
        Command::Nl { p, d1, d2 } => {
            let q = NLQuery {
                p: *p,
                d1: *d1,
                d2: *d2,
            };
            let delta = discriminant_delta(q);
            let trunc = cli.trunc.unwrap_or(delta.max(0) + 1);
            let nl = nl_number(q, trunc).context("NL number")?;
            let rows = std::iter::once(vec![
                p.to_string(),
                d1.to_string(),
                d2.to_string(),
                delta.to_string(),
                nl.to_string(),
            ]);
            emit_table(
                &long_table("p", &["d1", "d2", "Delta", "NL"], rows),
                cli.format,
            )
        }
        Command::Kml { d1max, d2max } => {
            let values = kml_series(*d1max, *d2max)?;
            let rows = values
                .iter()
                .map(|((d1, d2), v)| vec![d1.to_string(), d2.to_string(), format_rational(v)]);
            emit_table(&long_table("d1", &["d2", "N"], rows), cli.format)
        }
        Command::Check { suite } => {
            let config = CheckConfig {
                trunc: cli.trunc,
                depth: cli.depth,
            };
            let suites = match suite {
                Selection::All => Suite::ALL.to_vec(),
                Selection::One(s) => vec![*s],
            };
            let reports = run_checks(&suites, &config)?;
            emit_reports(&reports, cli.format)?;
            Ok(reports.iter().all(|r| r.pass))
        }
    }
}

/// Runs the suites on separate threads and returns the reports in input order.
fn run_checks(suites: &[Suite], config: &CheckConfig) -> Result<Vec<CheckReport>> {
    thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&suite| scope.spawn(move || checks::run(suite, config)))
            .collect();
        handles
            .into_iter()
            .zip(suites)
            .map(|(h, suite)| {
                let report = h
                    .join()
                    .map_err(|_| anyhow::anyhow!("check `{suite}` panicked"))?;
                report.with_context(|| format!("check `{suite}`"))
            })
            .collect()
    })
}

fn long_table<I>(first: &str, rest: &[&str], rows: I) -> Table
where
    I: IntoIterator<Item = Vec<String>>,
{
    Table {
        corner: first.to_string(),
        columns: rest.iter().map(|s| s.to_string()).collect(),
        rows: rows
            .into_iter()
            .map(|mut r| {
                let label = r.remove(0);
                TableRow {
                    label,
                    cells: r.into_iter().map(Some).collect(),
                }
            })
            .collect(),
    }
}

fn emit_table(table: &Table, format: Format) -> Result<bool> {
    match format {
        Format::Tsv => print!("{}", table.to_tsv()),
        Format::Json => print!("{}", table.to_json()),
    }
    Ok(true)
}

#[derive(Serialize)]
struct CheckOutput<'a> {
    pass: bool,
    checks: &'a [CheckReport],
}

fn emit_reports(reports: &[CheckReport], format: Format) -> Result<()> {
    match format {
        Format::Tsv => {
            for r in reports {
                println!(
                    "{}\t{}",
                    r.summary_line(),
                    serde_json::to_string(&r.details)?
                );
            }
        }
        Format::Json => {
            let out = CheckOutput {
                pass: reports.iter().all(|r| r.pass),
                checks: reports,
            };
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
    }
    Ok(())
}
