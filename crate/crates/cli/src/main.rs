//! `mfq`: verification runs, family sweeps and oracle comparisons for
//! matching-free complexes of (whisker) graphs.
//!
//! Exit status: 0 when every prediction agrees, 1 on a disagreement or an
//! oracle mismatch, 2 on bad input, 3 when a required check could not be
//! decided within the caps.

mod input;
mod oracle;
mod output;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mfq::even_conn::MatchingOrder;
use mfq::graph::enumerate_matchings;
use mfq::homology::Field;
use mfq::shelling::DEFAULT_FACET_CAP;
use mfq::theorems::{parse_checks, verify, Check, Expected, VerificationReport, VerifyOptions};
use mfq::Error;
use rayon::prelude::*;

use input::{load_family, load_graph, parse_matching, Input, QSpec};
use oracle::{OracleKind, OracleReport};
use output::Format;

#[derive(Parser)]
#[command(name = "mfq", version, about = "Matching-free complexes of graphs: predictions against computation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify predictions for the given graphs.
    Verify(VerifyArgs),
    /// Verify predictions over a family and a range of sizes.
    Sweep(SweepArgs),
    /// Compare a structured computation with its brute-force oracle.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct Sources {
    /// Graph file (graph6 lines or edge list; `-` for stdin), or `wcN` / `wpN`
    /// for the whisker graph of a cycle or path.
    #[arg(long = "graph")]
    graphs: Vec<String>,
    /// Base graph family whose whisker graphs are used: `cycle:n`, `path:n`,
    /// `kbip:a,b`, `star:k`, `complete:n`, `tree:0-1,1-2,...`, `trees:n`,
    /// `connected:n`, `all_connected:n`.
    #[arg(long = "family")]
    families: Vec<String>,
    /// Treat graphs read from files as the base graph `H` and use `W(H)`.
    #[arg(long)]
    whisker: bool,
}

impl Sources {
    fn load(&self) -> mfq::Result<Vec<Input>> {
        let mut out = Vec::new();
        for f in &self.families {
            out.extend(load_family(f)?);
        }
        for g in &self.graphs {
            out.extend(load_graph(g, self.whisker)?);
        }
        if out.is_empty() {
            return Err(Error::Parse("no input: use --graph or --family".into()));
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum FieldChoice {
    Gf2,
    Rationals,
    Both,
}

#[derive(Args)]
struct RunArgs {
    /// Checks to run: purity, dim, shelling, cm, depth, colon, sr,
    /// facet-complement, or all.
    #[arg(long, default_value = "all")]
    checks: String,
    /// Coefficient field for homology.
    #[arg(long, value_enum, default_value = "gf2")]
    field: FieldChoice,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, env = "MFQ_JOBS")]
    jobs: Option<usize>,
    /// Facet count above which exhaustive shelling search gives up.
    #[arg(long, default_value_t = DEFAULT_FACET_CAP, value_parser = parse_cap)]
    cap: usize,
    /// Omit timings so output is identical from run to run.
    #[arg(long)]
    stable: bool,
    /// JSON object of predictions that replace the built-in ones, e.g.
    /// `{"shellable": false}`.
    #[arg(long)]
    expect: Option<String>,
    /// Order on matchings for the constructive shelling: `lex` or `seed:N`.
    #[arg(long, default_value = "lex", value_parser = parse_order)]
    order: MatchingOrder,
}

fn parse_cap(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_order(s: &str) -> Result<MatchingOrder, String> {
    match s.split_once(':') {
        None if s == "lex" => Ok(MatchingOrder::Lexicographic),
        Some(("seed", n)) => n.parse().map(MatchingOrder::Seeded).map_err(|e| format!("bad seed: {e}")),
        _ => Err(format!("expected `lex` or `seed:N`, got `{s}`")),
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    sources: Sources,
    /// `q` values: `k`, `a..b` (inclusive), `all` or `shellable`.
    #[arg(long, default_value = "all")]
    q: QSpec,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Family name: cycle, path, star, complete, trees, connected or
    /// all_connected.
    #[arg(long)]
    family: String,
    /// Sizes, as `a..b` (inclusive) or a single number.
    #[arg(long)]
    n: QSpec,
    /// `q` values, cut down to `1..=ν` for each graph.
    #[arg(long, default_value = "all")]
    q: QSpec,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(value_enum)]
    kind: OracleKind,
    #[command(flatten)]
    sources: Sources,
    /// Edges as `u-v` or joined labels such as `x1x2`, comma-separated.
    /// Without it, every matching with size in the `--q` range is tried.
    #[arg(long)]
    matching: Option<String>,
    /// `q` for sr and facets; matching sizes for colon and even-conn.
    #[arg(long, default_value = "all")]
    q: QSpec,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Ok = 0,
    Indeterminate = 3,
    Disagree = 1,
    Usage = 2,
}

impl Status {
    /// Combined outcome: a disagreement outranks an undecided check.
    fn worst(self, other: Status) -> Status {
        let rank = |s: Status| match s {
            Status::Ok => 0,
            Status::Indeterminate => 1,
            Status::Disagree => 2,
            Status::Usage => 3,
        };
        if rank(other) > rank(self) { other } else { self }
    }
}

fn error_status(e: &Error) -> Status {
    match e {
        Error::TooLarge { .. } | Error::TooManyVertices(_) => Status::Indeterminate,
        _ => Status::Usage,
    }
}

fn fail(context: &str, e: Error) -> Status {
    if context.is_empty() {
        eprintln!("error: {e}");
    } else {
        eprintln!("error: {context}: {e}");
    }
    error_status(&e)
}

fn usage(e: impl std::fmt::Display) -> Status {
    eprintln!("error: {e}");
    Status::Usage
}

fn options(run: &RunArgs) -> Result<(VerifyOptions, Vec<Check>, Expected), Status> {
    let checks = parse_checks(&run.checks).map_err(usage)?;
    let expected = match &run.expect {
        None => Expected::default(),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
            serde_json::from_str(&text).map_err(|e| usage(format!("{path}: {e}")))?
        }
    };
    let fields = match run.field {
        FieldChoice::Gf2 => vec![Field::Gf2],
        FieldChoice::Rationals => vec![Field::Rationals],
        FieldChoice::Both => vec![Field::Gf2, Field::Rationals],
    };
    let opts = VerifyOptions {
        fields,
        facet_cap: run.cap,
        order: run.order,
        stable: run.stable,
    };
    Ok((opts, checks, expected))
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, Status> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(usage("--jobs must be positive"));
        }
        b = b.num_threads(j);
    }
    b.build().map_err(usage)
}

/// Runs every `(input, q)` job in parallel and writes the reports in job
/// order.
fn run_jobs(jobs: Vec<(Input, usize)>, run: &RunArgs) -> Status {
    let (opts, checks, expected) = match options(run) {
        Ok(o) => o,
        Err(s) => return s,
    };
    let pool = match pool(run.jobs) {
        Ok(p) => p,
        Err(s) => return s,
    };
    let results: Vec<mfq::Result<VerificationReport>> = pool.install(|| {
        jobs.par_iter()
            .map(|(input, q)| verify(&input.name, &input.subject, *q, &checks, &opts, &expected))
            .collect()
    });
    let mut status = Status::Ok;
    let mut reports = Vec::new();
    for ((input, q), r) in jobs.iter().zip(results) {
        match r {
            Ok(r) => {
                if r.has_disagreement() {
                    status = status.worst(Status::Disagree);
                } else if r.has_indeterminate() {
                    status = status.worst(Status::Indeterminate);
                }
                reports.push(r);
            }
            Err(e) => {
                eprintln!("error: {} q={q}: {e}", input.name);
                status = status.worst(error_status(&e));
            }
        }
    }
    let mut out = io::stdout().lock();
    if let Err(e) = output::write_reports(&mut out, run.format, &reports).and_then(|_| out.flush()) {
        return usage(e);
    }
    let count = |v| reports.iter().filter(|r| r.agree.values().any(|&x| x == v)).count();
    eprintln!(
        "{} reports: {} with a disagreement, {} with an undecided check",
        reports.len(),
        count(mfq::theorems::Verdict::Disagree),
        count(mfq::theorems::Verdict::Indeterminate)
    );
    status
}

fn cmd_verify(args: &VerifyArgs) -> Status {
    let inputs = match args.sources.load() {
        Ok(i) => i,
        Err(e) => return fail("", e),
    };
    let mut jobs = Vec::new();
    for input in inputs {
        match args.q.values(&input.subject, false) {
            Ok(qs) => jobs.extend(qs.into_iter().map(|q| (input.clone(), q))),
            Err(e) => return fail(&input.name, e),
        }
    }
    run_jobs(jobs, &args.run)
}

fn cmd_sweep(args: &SweepArgs) -> Status {
    let QSpec::Range(lo, hi) = args.n else {
        return usage("--n needs a number or a range");
    };
    let mut jobs = Vec::new();
    for n in lo..=hi {
        let inputs = match load_family(&format!("{}:{n}", args.family)) {
            Ok(i) => i,
            Err(e) => return fail("", e),
        };
        for input in inputs {
            match args.q.values(&input.subject, true) {
                Ok(qs) => jobs.extend(qs.into_iter().map(|q| (input.clone(), q))),
                Err(e) => return fail(&input.name, e),
            }
        }
    }
    run_jobs(jobs, &args.run)
}

fn cmd_oracle(args: &OracleArgs) -> Status {
    let inputs = match args.sources.load() {
        Ok(i) => i,
        Err(e) => return fail("", e),
    };
    let mut reports: Vec<OracleReport> = Vec::new();
    for input in &inputs {
        let g = input.subject.graph();
        let result: mfq::Result<Vec<OracleReport>> = (|| {
            if args.kind.takes_matching() {
                let matchings = match &args.matching {
                    Some(s) => vec![parse_matching(g, s)?],
                    None => args
                        .q
                        .values(&input.subject, true)?
                        .into_iter()
                        .flat_map(|k| enumerate_matchings(g, k))
                        .collect(),
                };
                matchings
                    .par_iter()
                    .map(|m| oracle::run_with_matching(args.kind, &input.name, g, m))
                    .collect()
            } else {
                if args.matching.is_some() {
                    return Err(Error::Parse("--matching only applies to colon and even-conn".into()));
                }
                args.q
                    .values(&input.subject, false)?
                    .into_par_iter()
                    .map(|q| oracle::run_with_q(args.kind, &input.name, g, q))
                    .collect()
            }
        })();
        match result {
            Ok(r) => reports.extend(r),
            Err(e) => {
                eprintln!("error: {}: {e}", input.name);
                return error_status(&e);
            }
        }
    }
    let mut out = io::stdout().lock();
    if let Err(e) = output::write_records(&mut out, args.format, &reports).and_then(|_| out.flush()) {
        return usage(e);
    }
    let mismatches = reports.iter().filter(|r| !r.agree).count();
    if mismatches > 0 {
        eprintln!("{mismatches} of {} comparisons differ", reports.len());
        return Status::Disagree;
    }
    Status::Ok
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Oracle(a) => cmd_oracle(a),
    };
    ExitCode::from(status as u8)
}
