//! Command-line front end. [`dispatch`] parses arguments, runs one command
//! and returns the exit status with the JSON report, so the binary stays a
//! thin wrapper and tests can drive every command in process.
//!
//! Exit status: 0 ok, 2 bound violated, 1 computational error (overflow,
//! resource limit, bad data), 64 usage error.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{
    check_range, extrema_range, max_distance_report, order0_extrema_with, ratio_report, small_order_chain, ExtremaScanner,
    ScanMode,
};
use crate::error::{Error, Limits, Result};
use crate::exact::Rt3Num;
use crate::geometry::{order_n_chain, render_svg, trapezoid_chain, PlanePoint, SvgStyle};
use crate::sequence::{lambda_prefix_with, orientations_to_string, phi, psi};
use crate::subword::SubwordIndexer;
use crate::sweep::{max_intersected_with, Normalization, SweepOptions, SweepShape, WindowRule};
use crate::walk::{chunk_plan, merge_records, parse_records, run_chunks, walk_prefix_with, ChunkRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "collinear-walk", version, about = "Exact checks of collinearity bounds on a morphic lattice walk")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Memory budget for generated prefixes, e.g. 512M or 4G.
    #[arg(long, global = true, value_parser = parse_bytes)]
    memory_limit: Option<u64>,
    /// Emit compact single-line JSON.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prefix of the fixed point as symbols, steps, orientations or walk points.
    Generate {
        n: usize,
        #[arg(long, value_enum, default_value_t = GenerateFormat::Symbols)]
        format: GenerateFormat,
    },
    /// 1-based start of the last length-n window occurring for the first time.
    LastNewSubword { n: usize },
    /// Squared perpendicular extrema for separations 1..=6.
    Order0Extrema,
    /// Assert max (c+1)·h(d)/(d·l(c)) over c, d in [lo, hi] is below the bound.
    AssertDistanceRatio {
        lo: usize,
        hi: usize,
        #[arg(allow_hyphen_values = true)]
        bound_whole: i64,
        #[arg(allow_hyphen_values = true)]
        bound_rt3: i64,
    },
    /// Assert max h(d)/d over d in [lo, hi] is at most the bound.
    AssertMaxDistance {
        lo: usize,
        hi: usize,
        #[arg(allow_hyphen_values = true)]
        bound_whole: i64,
        #[arg(allow_hyphen_values = true)]
        bound_rt3: i64,
    },
    /// Most trapezoids within a window met by one straight line.
    CountCollinearTrapezoids {
        window: usize,
        #[arg(long, value_enum, default_value_t = ShapeArg::Line)]
        shape: ShapeArg,
        #[arg(long, value_enum, default_value_t = RuleArg::Separation)]
        rule: RuleArg,
        #[arg(long, value_enum, default_value_t = NormArg::Geometric)]
        normalization: NormArg,
        /// Exit 2 when the maximum exceeds this value.
        #[arg(long)]
        max_allowed: Option<usize>,
    },
    /// Most collinear walk points among indices [start, end] within a window.
    CountCollinearPoints {
        #[arg(long)]
        end: usize,
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[arg(long, default_value_t = 16807)]
        window: usize,
        /// Chunk length; chunks overlap by window − 1 indices.
        #[arg(long)]
        chunk: Option<usize>,
        /// Write one JSON record per chunk to this file.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Exit 2 when the maximum exceeds this value.
        #[arg(long)]
        max_allowed: Option<usize>,
    },
    /// SVG of the first `count` trapezoids, optionally with every higher order.
    DrawTrapezoids {
        count: usize,
        out: PathBuf,
        #[arg(long)]
        recursive: bool,
        /// Pixels per unit.
        #[arg(long, default_value_t = 4.0)]
        unit: f64,
    },
    /// Combine chunk records from JSONL files into one maximum.
    MergeResults {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenerateFormat {
    Symbols,
    Steps,
    Orientations,
    Points,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ShapeArg {
    Line,
    Ray,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RuleArg {
    Separation,
    Consecutive,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NormArg {
    Geometric,
    Table,
    None,
}

/// Accepts plain bytes or a K, M, G suffix (powers of 1024).
fn parse_bytes(s: &str) -> std::result::Result<u64, String> {
    let t = s.trim();
    let (digits, mult) = match t.chars().last().map(|c| c.to_ascii_uppercase()) {
        Some('K') => (&t[..t.len() - 1], 1u64 << 10),
        Some('M') => (&t[..t.len() - 1], 1 << 20),
        Some('G') => (&t[..t.len() - 1], 1 << 30),
        _ => (t, 1),
    };
    digits
        .parse::<u64>()
        .ok()
        .and_then(|v| v.checked_mul(mult))
        .ok_or_else(|| format!("invalid size {s:?}"))
}

/// One command run. Only `result` is compared across runs; the wall time
/// varies.
#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub command: String,
    pub parameters: Value,
    pub result: Value,
    pub exact: bool,
    pub wall_seconds: f64,
}

/// Exit status plus what the binary writes to stdout and stderr.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub record: Option<RunRecord>,
}

impl Outcome {
    fn usage(text: String) -> Outcome {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: text,
            record: None,
        }
    }
}

fn exit_code_of(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) => EXIT_USAGE,
        _ => EXIT_ERROR,
    }
}

pub fn dispatch<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: e.to_string(),
                    stderr: String::new(),
                    record: None,
                },
                _ => Outcome::usage(e.to_string()),
            };
        }
    };
    if cli.workers == Some(0) {
        return Outcome::usage("--workers must be at least 1\n".into());
    }
    let limits = cli.memory_limit.map_or_else(Limits::default, |b| Limits { max_bytes: b });
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(k) = cli.workers {
        pool = pool.num_threads(k);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return failure(EXIT_ERROR, format!("cannot start workers: {e}")),
    };

    let t = Instant::now();
    let (name, parameters) = describe(&cli.command);
    let ran = pool.install(|| run(&cli.command, &limits));
    match ran {
        Ok((result, violated)) => {
            let record = RunRecord {
                command: name.into(),
                parameters,
                result,
                exact: true,
                wall_seconds: t.elapsed().as_secs_f64(),
            };
            let text = if cli.compact {
                serde_json::to_string(&record)
            } else {
                serde_json::to_string_pretty(&record)
            }
            .expect("record serializes");
            Outcome {
                code: if violated { EXIT_VIOLATION } else { EXIT_OK },
                stdout: text + "\n",
                stderr: String::new(),
                record: Some(record),
            }
        }
        Err(e) => failure(exit_code_of(&e), format!("error: {e}")),
    }
}

fn failure(code: i32, msg: String) -> Outcome {
    Outcome {
        code,
        stdout: String::new(),
        stderr: msg + "\n",
        record: None,
    }
}

fn describe(c: &Command) -> (&'static str, Value) {
    match c {
        Command::Generate { n, format } => ("generate", json!({"n": n, "format": format!("{format:?}").to_lowercase()})),
        Command::LastNewSubword { n } => ("last-new-subword", json!({ "n": n })),
        Command::Order0Extrema => ("order0-extrema", json!({})),
        Command::AssertDistanceRatio { lo, hi, bound_whole, bound_rt3 } => (
            "assert-distance-ratio",
            json!({"lo": lo, "hi": hi, "bound": {"whole": bound_whole, "rt3": bound_rt3}}),
        ),
        Command::AssertMaxDistance { lo, hi, bound_whole, bound_rt3 } => (
            "assert-max-distance",
            json!({"lo": lo, "hi": hi, "bound": {"whole": bound_whole, "rt3": bound_rt3}}),
        ),
        Command::CountCollinearTrapezoids { window, shape, rule, normalization, max_allowed } => (
            "count-collinear-trapezoids",
            json!({
                "window": window,
                "shape": format!("{shape:?}").to_lowercase(),
                "rule": format!("{rule:?}").to_lowercase(),
                "normalization": format!("{normalization:?}").to_lowercase(),
                "max_allowed": max_allowed,
            }),
        ),
        Command::CountCollinearPoints { end, start, window, chunk, output, max_allowed } => (
            "count-collinear-points",
            json!({
                "start": start, "end": end, "window": window, "chunk": chunk,
                "output": output, "max_allowed": max_allowed,
            }),
        ),
        Command::DrawTrapezoids { count, out, recursive, unit } => (
            "draw-trapezoids",
            json!({"count": count, "out": out, "recursive": recursive, "unit": unit}),
        ),
        Command::MergeResults { files } => ("merge-results", json!({ "files": files })),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

/// Runs a parsed command; the flag is true when a checked bound fails.
fn run(c: &Command, limits: &Limits) -> Result<(Value, bool)> {
    match c {
        Command::Generate { n, format } => {
            let w = lambda_prefix_with(*n, limits)?;
            let w = &w[..*n];
            let items: Vec<String> = match format {
                GenerateFormat::Symbols => w.iter().map(|s| s.to_string()).collect(),
                GenerateFormat::Steps => phi(w).iter().map(|s| s.to_string()).collect(),
                GenerateFormat::Orientations => vec![orientations_to_string(&psi(w))],
                GenerateFormat::Points => walk_prefix_with(*n, limits)?.iter().map(|p| p.to_string()).collect(),
            };
            Ok((json!({ "n": n, "items": items }), false))
        }
        Command::LastNewSubword { n } => {
            let r = SubwordIndexer::new(*limits).index_of_last_new_subword(*n)?;
            Ok((to_value(&r), false))
        }
        Command::Order0Extrema => {
            let mut ix = SubwordIndexer::new(*limits);
            let rows = (1..=6).map(|c| order0_extrema_with(&mut ix, c)).collect::<Result<Vec<_>>>()?;
            Ok((to_value(&rows), false))
        }
        Command::AssertDistanceRatio { lo, hi, bound_whole, bound_rt3 } => {
            let bound = Rt3Num::new(*bound_whole as i128, *bound_rt3 as i128);
            check_range(*lo, *hi)?;
            let ext = extrema_range(&mut ExtremaScanner::new(ScanMode::default(), *limits), *lo, *hi)?;
            let r = ratio_report(ext, bound)?;
            Ok((to_value(&r), !r.holds))
        }
        Command::AssertMaxDistance { lo, hi, bound_whole, bound_rt3 } => {
            let bound = Rt3Num::new(*bound_whole as i128, *bound_rt3 as i128);
            check_range(*lo, *hi)?;
            let ext = extrema_range(&mut ExtremaScanner::new(ScanMode::default(), *limits), *lo, *hi)?;
            let r = max_distance_report(ext, bound)?;
            let chain = small_order_chain(&r)?;
            let violated = !r.holds;
            Ok((json!({ "report": to_value(&r), "small_order_chain": to_value(&chain), "chain_holds": chain.holds() }), violated))
        }
        Command::CountCollinearTrapezoids { window, shape, rule, normalization, max_allowed } => {
            let opts = SweepOptions {
                shape: match shape {
                    ShapeArg::Line => SweepShape::Line,
                    ShapeArg::Ray => SweepShape::Ray,
                },
                rule: match rule {
                    RuleArg::Separation => WindowRule::Separation,
                    RuleArg::Consecutive => WindowRule::Consecutive,
                },
                normalization: match normalization {
                    NormArg::Geometric => Normalization::Geometric,
                    NormArg::Table => Normalization::Table,
                    NormArg::None => Normalization::None,
                },
            };
            let r = max_intersected_with(*window, &opts, limits)?;
            let violated = max_allowed.is_some_and(|m| r.max > m);
            Ok((to_value(&r), violated))
        }
        Command::CountCollinearPoints { end, start, window, chunk, output, max_allowed } => {
            if start > end {
                return Err(Error::InvalidArgument(format!("start {start} exceeds end {end}")));
            }
            let points = walk_prefix_with(*end, limits)?;
            let plan: Vec<(usize, usize)> = match chunk {
                Some(c) => chunk_plan(end - start, *window, *c)?
                    .into_iter()
                    .map(|(s, e)| (s + start, e + start))
                    .collect(),
                None => vec![(*start, *end)],
            };
            let records = run_chunks(&points, &plan, *window)?;
            if let Some(path) = output {
                let text: String = records.iter().map(|r| r.to_json_line() + "\n").collect();
                std::fs::write(path, text)?;
            }
            let merged = merge_records(&records)?;
            let coords: Vec<String> = merged.witness_indices.iter().map(|&i| points[i].to_string()).collect();
            let violated = max_allowed.is_some_and(|m| merged.max_points > m);
            Ok((json!({ "merged": to_value(&merged), "witness_points": coords }), violated))
        }
        Command::DrawTrapezoids { count, out, recursive, unit } => {
            if *count == 0 {
                return Err(Error::InvalidArgument("count must be at least 1".into()));
            }
            let w = lambda_prefix_with(*count, limits)?;
            let w = &w[..*count];
            let mut layers = vec![trapezoid_chain(w, PlanePoint::ORIGIN)];
            if *recursive {
                let mut n = 1;
                while 7usize.pow(n) <= *count {
                    layers.push(order_n_chain(w, n));
                    n += 1;
                }
            }
            let svg = render_svg(&layers, SvgStyle { unit: *unit, ..SvgStyle::default() })?;
            std::fs::write(out, &svg)?;
            let sizes: Vec<usize> = layers.iter().map(Vec::len).collect();
            Ok((json!({ "out": out, "orders": sizes.len(), "trapezoids_per_order": sizes, "bytes": svg.len() }), false))
        }
        Command::MergeResults { files } => {
            let mut records: Vec<ChunkRecord> = Vec::new();
            for f in files {
                let text = std::fs::read_to_string(f).map_err(|e| Error::Io(format!("{}: {e}", f.display())))?;
                records.extend(parse_records(&text)?);
            }
            let merged = merge_records(&records)?;
            Ok((to_value(&merged), false))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        dispatch(std::iter::once("collinear-walk").chain(args.iter().copied()))
    }

    #[test]
    fn byte_sizes() {
        assert_eq!(parse_bytes("512"), Ok(512));
        assert_eq!(parse_bytes("2k"), Ok(2048));
        assert_eq!(parse_bytes("3G"), Ok(3 << 30));
        assert!(parse_bytes("x").is_err());
    }

    #[test]
    fn usage_errors() {
        assert_eq!(go(&[]).code, EXIT_USAGE);
        assert_eq!(go(&["no-such-command"]).code, EXIT_USAGE);
        assert_eq!(go(&["last-new-subword", "abc"]).code, EXIT_USAGE);
        assert_eq!(go(&["--workers", "0", "order0-extrema"]).code, EXIT_USAGE);
        assert_eq!(go(&["assert-distance-ratio", "3", "48", "9", "0"]).code, EXIT_USAGE);
        assert_eq!(go(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn small_commands() {
        let r = go(&["last-new-subword", "2"]);
        assert_eq!(r.code, EXIT_OK);
        assert_eq!(r.record.unwrap().result["index"], 558);

        let r = go(&["generate", "5", "--format", "orientations"]);
        assert_eq!(r.code, EXIT_OK);
        assert_eq!(r.record.unwrap().result["items"][0].as_str().unwrap().len(), 5);
    }

    #[test]
    fn resource_limit_is_computational_error() {
        let r = go(&["--memory-limit", "1K", "generate", "100000"]);
        assert_eq!(r.code, EXIT_ERROR, "{}", r.stderr);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = go(&["--workers", "1", "order0-extrema"]).record.unwrap();
        let b = go(&["--workers", "2", "order0-extrema"]).record.unwrap();
        assert_eq!(a.result, b.result);
    }
}
