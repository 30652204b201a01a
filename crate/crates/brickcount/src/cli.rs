//! Argument parsing and subcommand dispatch.

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use brickcount_core::bounds::{self, PartitionSpec};
use brickcount_core::enumerator::MAX_BRICKS;
use brickcount_core::tape::{self, Tape};
use brickcount_core::{BrickShape, EnumError};
use clap::{Args, Parser, Subcommand};

use crate::driver::{self, Budget, Limits, WORKERS_ENV};
use crate::report::{
    BottleneckRow, BoundsReport, CountReport, CountRow, Format, Metadata, PartitionNote, TapeReport, Tier, VerifyReport,
};
use crate::verify::{self, Golden};

/// Node budget applied in the desk tier when `--max-nodes` is not given.
pub const DESK_NODE_BUDGET: u64 = 20_000_000;

/// Seconds between progress lines on stderr.
const PROGRESS_SECONDS: f64 = 10.0;

#[derive(Debug, Parser)]
#[command(name = "brickcount", version, about = "Count brick buildings, decode tapes and bound growth constants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count buildings T(n), heights H(n, m) and anchored buildings a_n.
    Count(CountArgs),
    /// Upper and lower bounds on the growth constant.
    Bounds(BoundsArgs),
    /// Decode a comma-separated tape.
    Tape(TapeArgs),
    /// Run the golden-value and property checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    #[arg(long, value_enum, default_value = "desk")]
    pub tier: Tier,
    /// Stop after visiting this many search nodes.
    #[arg(long)]
    pub max_nodes: Option<u64>,
    /// Stop after this many seconds.
    #[arg(long)]
    pub max_seconds: Option<f64>,
    /// Worker threads; counts do not depend on this.
    #[arg(long, env = WORKERS_ENV)]
    pub workers: Option<usize>,
}

impl Common {
    pub fn limits(&self) -> Limits {
        let max_nodes = match (self.max_nodes, self.tier) {
            (Some(n), _) => Some(n),
            (None, Tier::Desk) => Some(DESK_NODE_BUDGET),
            (None, Tier::Extended) => None,
        };
        Limits {
            max_nodes,
            max_seconds: self.max_seconds,
            workers: self.workers.filter(|&w| w > 0).unwrap_or_else(driver::default_workers),
            progress_every: Some(PROGRESS_SECONDS),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    /// T(n), H(n, m) and a_n.
    Buildings,
    /// b_n and c_n.
    Bottleneck,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long, default_value = "2x4", value_parser = parse_shape)]
    pub shape: BrickShape,
    /// Brick counts, `A` or `A..B`.
    #[arg(long, value_parser = parse_range)]
    pub n: RangeInclusive<usize>,
    #[arg(long, value_enum, default_value = "buildings")]
    pub kind: Kind,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, default_value = "2x4", value_parser = parse_shape)]
    pub shape: BrickShape,
    /// Stud partition size tuples `a1,..,a8;b1,..,b8` (2x4 only).
    #[arg(long, value_parser = parse_partition)]
    pub partition: Vec<PartitionSpec>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct TapeArgs {
    #[arg(long, default_value = "2x4", value_parser = parse_shape)]
    pub shape: BrickShape,
    /// Number of bricks; inferred from the tape length when omitted.
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated entries, e.g. `0,5,0,0,-4,0,0,0,...`.
    #[arg(allow_hyphen_values = true)]
    pub tape: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// JSON list of `{key, expected}` entries replacing built-in golden values.
    #[arg(long)]
    pub golden: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

fn parse_shape(s: &str) -> Result<BrickShape, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_partition(s: &str) -> Result<PartitionSpec, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Parses `A` or `A..B` (inclusive).
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("`{t}` is not a brick count"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let a = num(s)?;
            (a, a)
        }
    };
    if a == 0 || a > b || b > MAX_BRICKS {
        return Err(format!("expected 1 <= A <= B <= {MAX_BRICKS}, got {a}..{b}"));
    }
    Ok(a..=b)
}

/// Failure of a subcommand, mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Limit(String),
    #[error("{0} check(s) failed")]
    Verify(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Limit(_) => 3,
        }
    }
}

fn limit_error(err: EnumError, common: &Common, limits: &Limits, what: &str) -> CliError {
    match err {
        EnumError::Partial(_) => {
            let mut msg = format!("{what}: {err}");
            if common.tier == Tier::Desk && common.max_nodes.is_none() {
                msg.push_str(&format!(
                    "\nthe desk tier caps a job at {} search nodes; rerun with --tier extended for a complete count",
                    limits.max_nodes.unwrap_or(DESK_NODE_BUDGET)
                ));
            }
            CliError::Limit(msg)
        }
        other => CliError::Usage(format!("{what}: {other}")),
    }
}

fn metadata(start: Instant, limits: &Limits) -> Metadata {
    Metadata { elapsed_seconds: start.elapsed().as_secs_f64(), workers: limits.workers() }
}

pub fn cmd_count(args: &CountArgs) -> Result<String, CliError> {
    let start = Instant::now();
    let limits = args.common.limits();
    let budget = Budget::new(&limits);
    let mut report = CountReport { shape: args.shape.to_string(), rows: Vec::new(), bottleneck: Vec::new(), metadata: metadata(start, &limits) };
    for n in args.n.clone() {
        report.metadata = metadata(start, &limits);
        match args.kind {
            Kind::Buildings => {
                let l = driver::count_ledger(args.shape, n, &budget, &limits).map_err(|e| {
                    print_partial(&report, args.common.format);
                    limit_error(e, &args.common, &limits, &format!("count n = {n}"))
                })?;
                report.rows.push(CountRow::from(&l));
            }
            Kind::Bottleneck => {
                if n + 1 > MAX_BRICKS {
                    return Err(CliError::Usage(format!("bottleneck counts need n < {MAX_BRICKS}")));
                }
                let (b, c, v) = driver::count_bc(args.shape, n, &budget, &limits).map_err(|e| {
                    print_partial(&report, args.common.format);
                    limit_error(e, &args.common, &limits, &format!("bottleneck count n = {n}"))
                })?;
                report.bottleneck.push(BottleneckRow { n, single_top: b, bottleneck_free: c, node_visits: v });
            }
        }
    }
    report.metadata = metadata(start, &limits);
    Ok(report.render(args.common.format))
}

/// Completed rows go to stderr so a limit still leaves a progress record.
fn print_partial(report: &CountReport, format: Format) {
    if !report.rows.is_empty() || !report.bottleneck.is_empty() {
        eprintln!("completed before the limit:\n{}", report.render(format));
    }
}

pub fn cmd_bounds(args: &BoundsArgs) -> Result<String, CliError> {
    let start = Instant::now();
    let limits = args.common.limits();
    let shape = args.shape;
    let two_by_four = shape == BrickShape::TWO_BY_FOUR;
    if !args.partition.is_empty() && !two_by_four {
        return Err(CliError::Usage("--partition applies to the 2x4 brick only".into()));
    }
    let (cs, ts): (Vec<u64>, Vec<u64>) = if two_by_four {
        let golden = Golden::builtin();
        let ts = (1..=6).filter_map(|n| golden.get(&format!("T({n})")).and_then(|e| e.expected.parse().ok())).collect();
        (bounds::C_2X4.to_vec(), ts)
    } else {
        (Vec::new(), Vec::new())
    };
    let mut reports = bounds::entropy_summary(shape, &cs, &ts);
    let mut notes = Vec::new();
    if two_by_four {
        let mut specs = vec![PartitionSpec::EVEN, PartitionSpec::REFINED, PartitionSpec::UNEVEN];
        for spec in &args.partition {
            let r = bounds::partition_upper_bound(spec).map_err(|e| CliError::Usage(format!("partition {spec}: {e}")))?;
            if !specs.contains(spec) {
                reports.push(r);
                specs.push(*spec);
            }
        }
        for spec in specs {
            notes.push(PartitionNote { tuple: spec.to_string(), witness_found: spec.find_witness().is_some() });
        }
    }
    let report = BoundsReport::new(shape, &reports, notes, metadata(start, &limits));
    Ok(report.render(args.common.format))
}

pub fn cmd_tape(args: &TapeArgs) -> Result<String, CliError> {
    let shape = args.shape;
    let text = args.tape.trim();
    let n = match args.n {
        Some(n) => n,
        None => {
            let entries = if text.is_empty() { 0 } else { text.split(',').count() };
            let window = 2 * shape.studs() as usize;
            if entries == 0 || entries % window != 0 {
                return Err(CliError::Usage(format!(
                    "cannot infer the brick count from {entries} entries; pass --n (tapes hold 2 * {} * (n - 2) entries)",
                    shape.studs()
                )));
            }
            entries / window + 2
        }
    };
    if n == 0 || n > MAX_BRICKS {
        return Err(CliError::Usage(format!("brick count must be between 1 and {MAX_BRICKS}")));
    }
    let tape = Tape::parse(shape, n, text).map_err(|e| CliError::Usage(format!("tape: {e}")))?;
    let outcome = tape::decode(&tape);
    Ok(TapeReport::new(&tape, &outcome).render(args.common.format))
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<String, (String, CliError)> {
    let start = Instant::now();
    let limits = args.common.limits();
    let mut golden = Golden::builtin();
    if let Some(path) = &args.golden {
        let text = std::fs::read_to_string(path)
            .map_err(|e| (String::new(), CliError::Usage(format!("{}: {e}", path.display()))))?;
        golden.overlay(Golden::from_json(&text).map_err(|e| (String::new(), CliError::Usage(e.to_string())))?);
    }
    let checks = verify::run(&golden, args.common.tier, limits.clone());
    let report = VerifyReport::new(args.common.tier, checks, metadata(start, &limits));
    let text = report.render(args.common.format);
    if report.failed > 0 {
        Err((text, CliError::Verify(report.failed)))
    } else {
        Ok(text)
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> ExitCode {
    let result = match &cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Tape(a) => cmd_tape(a),
        Command::Verify(a) => cmd_verify(a).map_err(|(text, e)| {
            print!("{text}");
            e
        }),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("5").unwrap(), 5..=5);
        assert_eq!(parse_range("2..5").unwrap(), 2..=5);
        assert_eq!(parse_range("2..=4").unwrap(), 2..=4);
        assert!(parse_range("0..2").is_err());
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("x").is_err());
        assert!(parse_range("1..11").is_err());
    }

    #[test]
    fn parses_commands() {
        let cli = Cli::try_parse_from(["brickcount", "count", "--shape", "1x1", "--n", "5", "--workers", "2"]).unwrap();
        match cli.command {
            Command::Count(a) => {
                assert_eq!(a.shape, BrickShape::new(1, 1).unwrap());
                assert_eq!(a.common.limits().workers, 2);
                assert_eq!(a.common.limits().max_nodes, Some(DESK_NODE_BUDGET));
            }
            _ => panic!("count expected"),
        }
        assert!(Cli::try_parse_from(["brickcount", "count", "--shape", "2y4", "--n", "2"]).is_err());
        assert!(Cli::try_parse_from(["brickcount", "tape", "-1,0"]).is_ok());
    }

    #[test]
    fn one_by_one_counts_one() {
        let cli = Cli::try_parse_from(["brickcount", "count", "--shape", "1x1", "--n", "5", "--format", "csv"]).unwrap();
        let Command::Count(a) = cli.command else { panic!() };
        assert_eq!(cmd_count(&a).unwrap(), "n,m=1,m=2,m=3,m=4,m=5,T,a\n5,,,,,1,1,1\n");
    }
}
