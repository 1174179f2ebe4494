//! `tilewalk`: compute, verify, render and benchmark walk counts.
//!
//! Exit status is 0 when every check passed, 1 when a check or computation
//! failed and 2 for usage errors. b-file lookups under `verify --fetch` are
//! cached in `$TILEWALK_CACHE_DIR`, falling back to the user cache root.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use tilewalk::grid::{Board, TileSet};
use tilewalk::oeis::BFile;
use tilewalk::verify::{run_suite, Check, Suite, VerifyOptions};
use tilewalk::walk::{Budget, OracleConfig};
use tilewalk::BigInt;

use tilewalk_cli::report::{Row, RunReport, Table};
use tilewalk_cli::seq::{self, compute, Columns, Route, SeqName};

#[derive(Parser)]
#[command(name = "tilewalk", version, about = "Exact walk counts over square/domino tilings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Bfile,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named sequence for n = 0..=upto.
    Seq {
        /// One of v, w, w-domino, r, a, c, d, r1, w-by-line, fib.
        name: String,
        #[arg(long, default_value_t = 10)]
        upto: usize,
        #[arg(long, value_enum, default_value_t = Route::Recurrence)]
        route: Route,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest number of tilings the brute route may enumerate.
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        /// Accepted for symmetry with `verify`; sequences never touch the network.
        #[arg(long)]
        offline: bool,
    },
    /// Run an invariant suite.
    Verify {
        /// theorems, lemmas, elimination, closed-forms, oeis or all.
        suite: Suite,
        /// Look up b-files through the cache and the network before the fixtures.
        #[arg(long, conflicts_with = "offline")]
        fetch: bool,
        /// Never touch the network (the default).
        #[arg(long)]
        offline: bool,
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw one tiling with its forbidden edges and walks as SVG.
    Render {
        #[arg(long, default_value_t = 2)]
        rows: u8,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        dominoes_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time brute, recurrence and closed routes for v and w-domino.
    Bench {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure that stops a command before a report exists.
enum Fail {
    Usage(String),
    Run(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: Vec<String> = std::env::args().skip(1).collect();
    let result = match cli.command {
        Command::Seq { name, upto, route, format, out, budget, shards, offline: _ } => {
            cmd_seq(command, &name, upto, route, format, out.as_deref(), config(budget, shards))
        }
        Command::Verify { suite, fetch, offline: _, budget, shards, format, out } => {
            let opts = VerifyOptions {
                budget: config(budget, shards).budget,
                shards: shards.max(1),
                fetch_cache: fetch.then(tilewalk::oeis::default_cache_dir),
                ..VerifyOptions::default()
            };
            cmd_verify(command, suite, &opts, format, out.as_deref())
        }
        Command::Render { rows, cols, index, dominoes_only, out } => cmd_render(rows, cols, index, dominoes_only, out.as_deref()),
        Command::Bench { n_max, shards, budget, format, out } => {
            cmd_bench(command, n_max, config(budget, shards), format, out.as_deref())
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fail::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn config(budget: Option<u128>, shards: usize) -> OracleConfig {
    OracleConfig { budget: budget.map(Budget::new).unwrap_or_default(), shards: shards.max(1) }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Fail> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Fail::Run(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Fail::Run(e.to_string())),
    }
}

fn emit_report(report: &RunReport, format: ReportFormat, out: Option<&Path>) -> Result<bool, Fail> {
    let text = match format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Text => {
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            let mut s = report.summary_lines();
            for (route, secs) in &report.timings {
                s.push_str(&format!("time {route} {secs:.6}s\n"));
            }
            s + &format!("{} checks, {} failed\n", report.checks.len(), failed)
        }
    };
    emit(out, &text)?;
    Ok(report.passed)
}

fn cmd_seq(
    command: Vec<String>,
    name: &str,
    upto: usize,
    route: Route,
    format: Format,
    out: Option<&Path>,
    cfg: OracleConfig,
) -> Result<bool, Fail> {
    let seq: SeqName = name.parse().map_err(|e: seq::UnknownSequence| Fail::Usage(e.to_string()))?;
    let routes: Vec<Route> = if route == Route::All { Route::SINGLE.to_vec() } else { vec![route] };

    let mut report = RunReport::new(command);
    let mut computed: Vec<(Route, Columns)> = Vec::new();
    for r in routes {
        let start = Instant::now();
        let Some(result) = compute(seq, r, upto, &cfg) else {
            if route == Route::All {
                continue;
            }
            return Err(Fail::Usage(format!("sequence {name} has no {} route", r.name())));
        };
        report.timings.insert(r.name().to_string(), start.elapsed().as_secs_f64());
        match result {
            Ok(cols) => computed.push((r, cols)),
            Err(e) => {
                report.push(Check::failed(&format!("{name}-{}", r.name()), e));
            }
        }
    }

    if route == Route::All {
        if let Some((base_route, base)) = computed.first() {
            for (r, cols) in &computed[1..] {
                for ((label, want), (_, got)) in base.iter().zip(cols) {
                    let check = format!("{label}-{}-vs-{}", base_route.name(), r.name());
                    report.push(Check::sequences(&check, want, got));
                }
            }
        }
    }
    if !report.passed {
        let format = if format == Format::Json { ReportFormat::Json } else { ReportFormat::Text };
        emit_report(&report, format, out)?;
        return Ok(false);
    }

    let multi_route = computed.len() > 1;
    let mut columns = Vec::new();
    let mut data: Vec<&Vec<BigInt>> = Vec::new();
    for (r, cols) in &computed {
        for (label, values) in cols {
            columns.push(match (multi_route, cols.len()) {
                (false, _) => label.clone(),
                (true, 1) => r.name().to_string(),
                (true, _) => format!("{}:{label}", r.name()),
            });
            data.push(values);
        }
    }
    let rows: Vec<Row> =
        (0..=upto).map(|n| Row { n, values: data.iter().map(|c| c[n].to_string()).collect() }).collect();
    let table = Table { name: name.to_string(), columns, rows };

    let text = match format {
        Format::Json => {
            report.table = Some(table);
            report.to_json()
        }
        Format::Csv => {
            let mut s = format!("n,{}\n", table.columns.join(","));
            for row in &table.rows {
                s.push_str(&format!("{},{}\n", row.n, row.values.join(",")));
            }
            s
        }
        Format::Bfile => {
            // All routes agree, so the first column stands for the sequence.
            let per_route = computed.first().map_or(0, |(_, c)| c.len());
            if per_route != 1 {
                return Err(Fail::Usage(format!("{name} has {per_route} columns; b-file output needs one")));
            }
            let b = BFile {
                sequence_id: name.to_string(),
                entries: data[0].iter().enumerate().map(|(n, v)| (n as i64, v.clone())).collect(),
                comments: vec![format!("{name}, n = 0..{upto}")],
            };
            b.serialize()
        }
        Format::Text => {
            let mut widths: Vec<usize> = table.columns.iter().map(String::len).collect();
            for row in &table.rows {
                for (w, v) in widths.iter_mut().zip(&row.values) {
                    *w = (*w).max(v.len());
                }
            }
            let nw = upto.to_string().len().max(1);
            let mut s = format!("{:>nw$}", "n");
            for (c, w) in table.columns.iter().zip(&widths) {
                s.push_str(&format!("  {c:>w$}"));
            }
            s.push('\n');
            for row in &table.rows {
                s.push_str(&format!("{:>nw$}", row.n));
                for (v, w) in row.values.iter().zip(&widths) {
                    s.push_str(&format!("  {v:>w$}"));
                }
                s.push('\n');
            }
            s
        }
    };
    emit(out, &text)?;
    Ok(true)
}

fn cmd_verify(
    command: Vec<String>,
    suite: Suite,
    opts: &VerifyOptions,
    format: ReportFormat,
    out: Option<&Path>,
) -> Result<bool, Fail> {
    let mut report = RunReport::new(command);
    let start = Instant::now();
    for c in run_suite(suite, opts) {
        report.push(c);
    }
    report.timings.insert("suite".to_string(), start.elapsed().as_secs_f64());
    emit_report(&report, format, out)
}

fn cmd_render(rows: u8, cols: usize, index: usize, dominoes_only: bool, out: Option<&Path>) -> Result<bool, Fail> {
    let board = Board::new(rows, cols).map_err(|e| Fail::Usage(e.to_string()))?;
    let tiles = TileSet::from_squares_allowed(!dominoes_only);
    let svg = tilewalk::svg::render_board(board, tiles, index).map_err(|e| Fail::Run(e.to_string()))?;
    emit(out, &svg)?;
    Ok(true)
}

fn cmd_bench(
    command: Vec<String>,
    n_max: usize,
    cfg: OracleConfig,
    format: ReportFormat,
    out: Option<&Path>,
) -> Result<bool, Fail> {
    let mut report = RunReport::new(command);
    for (name, seq) in [("v", SeqName::V), ("w-domino", SeqName::WDomino)] {
        let mut results: Vec<(Route, Vec<BigInt>)> = Vec::new();
        for r in Route::SINGLE {
            let start = Instant::now();
            let Some(res) = compute(seq, r, n_max, &cfg) else { continue };
            report.timings.insert(format!("{name}/{}", r.name()), start.elapsed().as_secs_f64());
            match res {
                Ok(mut cols) => results.push((r, cols.remove(0).1)),
                Err(e) => return Err(Fail::Run(e)),
            }
        }
        let (base_route, base) = &results[0];
        for (r, values) in &results[1..] {
            report.push(Check::sequences(&format!("{name}-{}-vs-{}", base_route.name(), r.name()), base, values));
        }
        // Only the two-row brute route is split across threads.
        if cfg.shards > 1 && seq == SeqName::WDomino {
            let single = OracleConfig { shards: 1, ..cfg.clone() };
            let start = Instant::now();
            let one = compute(seq, Route::Brute, n_max, &single).expect("brute route exists");
            report.timings.insert(format!("{name}/brute-unsharded"), start.elapsed().as_secs_f64());
            let one = one.map_err(Fail::Run)?.remove(0).1;
            report.push(Check::sequences(&format!("{name}-sharded-vs-unsharded"), &one, base));
        }
    }
    emit_report(&report, format, out)
}
