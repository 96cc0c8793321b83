//! Command-line front end. Every subcommand prints one JSON [`Report`].
//!
//! Exit codes: 0 on success, 2 on usage or input errors, 1 when an internal
//! consistency check fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::anti_uniform::{
    anti_uniform_lengths, check_finite, check_infinite_tail, theorem6_applies,
};
use crate::battery::{run_battery, seed_from_env, SEED_ENV};
use crate::convergence::{estimate_optimal_lengths, DEFAULT_N_MAX, DEFAULT_WINDOW};
use crate::delta::{delta_from_trace, floor_log2_usize, DeltaResult};
use crate::dist::{counterexample, FiniteDistribution};
use crate::huffman::{canonical_codebook, expected_length, huffman, kraft_sum};
use crate::input::{parse_source, Source};
use crate::interval::{classify_l1, classify_l1_infinite, coverage_sum, L1Class};
use crate::oracle::{enumerate_default, optimal_lengths};
use crate::rational::Rational;
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(
    name = "prefixcode",
    version,
    about = "Exact analysis of binary Huffman codes"
)]
struct Cli {
    /// Emit JSON (the only output format; accepted for explicitness).
    #[arg(long, global = true)]
    json: bool,
    /// Replace the input echo with null.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lengths, expected length, Kraft sum, delta-occasion and l_1 class of a finite source.
    Analyze {
        source: String,
        /// Include the merge trace and a canonical codebook.
        #[arg(long)]
        trace: bool,
    },
    /// Classify the codeword length of the most likely symbol from p_1 alone.
    #[command(name = "classify-l1")]
    ClassifyL1 {
        /// A probability `a/b`, a decimal, or a source literal.
        p1: String,
    },
    /// The delta-occasion of a finite source.
    Delta { source: String },
    /// Anti-uniform test for a finite distribution or an infinite source.
    #[command(name = "anti-uniform")]
    AntiUniform {
        source: String,
        #[arg(long, default_value_t = 32)]
        depth: usize,
    },
    /// Every optimal length vector by exhaustive search (n <= 14).
    Oracle {
        source: String,
        /// Only report the size of the searched universe.
        #[arg(long)]
        count_only: bool,
    },
    /// Truncation-based length estimates for an infinite source.
    Converge(ConvergeArgs),
    /// Total width of the first K classification intervals, with bounds.
    #[command(name = "coverage-sum")]
    CoverageSum {
        #[arg(long, default_value_t = 10)]
        terms: u32,
    },
    /// One of the three parametrized counterexample distributions.
    Counterexample {
        id: u8,
        #[arg(long, default_value = "0")]
        epsilon: String,
        /// Also run the Huffman and oracle analysis.
        #[arg(long)]
        analyze: bool,
    },
    /// Randomized property checks, seeded from PREFIXCODE_SEED.
    Battery {
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
}

#[derive(Debug, Args)]
struct ConvergeArgs {
    #[arg(long)]
    spec: String,
    #[arg(long, default_value_t = 8)]
    depth: usize,
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    nmax: usize,
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    window: usize,
    /// Write the `(n, l_1..l_D)` series here.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Invariant(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(Value, Value), Failure>;

fn value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn echo(literal: &str, src: &Source) -> Value {
    match src {
        Source::Finite(d) => json!({"source": literal, "distribution": value(d)}),
        Source::Infinite(s) => json!({"source": literal, "spec": value(s)}),
    }
}

fn finite(literal: &str) -> Result<(FiniteDistribution, Value), Failure> {
    let src = parse_source(literal)?;
    let inputs = echo(literal, &src);
    match src {
        Source::Finite(d) => Ok((d, inputs)),
        Source::Infinite(_) => Err(Failure::Input(format!(
            "{literal:?} is an infinite source; this command needs a finite distribution"
        ))),
    }
}

fn class_value(class: &L1Class) -> Value {
    json!({"display": class.to_string(), "detail": value(class)})
}

fn delta_value(d: &FiniteDistribution, result: &DeltaResult) -> Value {
    match result {
        DeltaResult::Trivial => json!({
            "occasion": "TRIVIAL",
            "delta": null,
            "state": null,
            "floor_log2_n_minus_delta": null,
        }),
        DeltaResult::Zero { state } | DeltaResult::Found { state, .. } => {
            let delta = result.delta().unwrap();
            json!({
                "occasion": if delta == 0 { "ZERO" } else { "FOUND" },
                "delta": delta,
                "state": value(state),
                "floor_log2_n_minus_delta": floor_log2_usize(d.len() - delta),
            })
        }
    }
}

fn analyze(d: &FiniteDistribution, with_trace: bool) -> Result<Value, Failure> {
    let (lengths, trace) = huffman(d);
    let expected = expected_length(d, &lengths).map_err(|e| Failure::Invariant(e.to_string()))?;
    let kraft = kraft_sum(&lengths);
    let delta = delta_from_trace(d, &trace);
    let class = classify_l1(&d.p1())?;
    let l1 = lengths.get(1);

    if kraft != Rational::one() {
        return Err(Failure::Invariant(format!("Kraft sum {kraft} != 1")));
    }
    if let Some(delta) = delta.delta() {
        let via = floor_log2_usize(d.len() - delta);
        if via != l1 {
            return Err(Failure::Invariant(format!(
                "l_1 = {l1} but floor(log2(n - delta)) = {via}"
            )));
        }
    }
    if let Some(k) = class.k() {
        if k != l1 {
            return Err(Failure::Invariant(format!(
                "l_1 = {l1} but classification gives {k}"
            )));
        }
    }

    let mut out = json!({
        "lengths": value(&lengths),
        "l1": l1,
        "expected_length": value(&expected),
        "kraft_sum": value(&kraft),
        "delta": delta_value(d, &delta),
        "l1_classification": class_value(&class),
    });
    if with_trace {
        out["trace"] = value(&trace.records());
        out["codebook"] =
            value(&canonical_codebook(&lengths).map_err(|e| Failure::Invariant(e.to_string()))?);
    }
    Ok(out)
}

fn execute(cmd: &Command) -> Outcome {
    match cmd {
        Command::Analyze { source, trace } => {
            let (d, inputs) = finite(source)?;
            Ok((inputs, analyze(&d, *trace)?))
        }
        Command::ClassifyL1 { p1 } => {
            let (inputs, class) = match p1.parse::<Rational>() {
                Ok(p) => (json!({"p1": value(&p)}), classify_l1(&p)?),
                Err(_) => {
                    let src = parse_source(p1)?;
                    let class = match &src {
                        Source::Finite(d) => classify_l1(&d.p1())?,
                        Source::Infinite(s) => classify_l1_infinite(s)?,
                    };
                    (echo(p1, &src), class)
                }
            };
            Ok((inputs, class_value(&class)))
        }
        Command::Delta { source } => {
            let (d, inputs) = finite(source)?;
            let (_, trace) = huffman(&d);
            Ok((inputs, delta_value(&d, &delta_from_trace(&d, &trace))))
        }
        Command::AntiUniform { source, depth } => {
            let src = parse_source(source)?;
            let inputs = echo(source, &src);
            let results = match &src {
                Source::Finite(d) => {
                    let verdict = check_finite(d);
                    let lengths = huffman(d).0;
                    let anti = lengths == anti_uniform_lengths(d.len());
                    if verdict.holds != anti {
                        return Err(Failure::Invariant(format!(
                            "suffix test says {} but Huffman lengths are {lengths:?}",
                            verdict.holds
                        )));
                    }
                    json!({"verdict": value(&verdict), "huffman_lengths": value(&lengths)})
                }
                Source::Infinite(spec) => {
                    if *depth == 0 {
                        return Err(Failure::Input("--depth must be at least 1".into()));
                    }
                    let verdict = check_infinite_tail(spec, *depth);
                    let alpha = theorem6_applies(spec);
                    let mut out = json!({"verdict": value(&verdict), "alpha_criterion": alpha});
                    if alpha {
                        out["statement"] = json!(format!("l_i = i for all i <= {depth}"));
                    }
                    out
                }
            };
            Ok((inputs, results))
        }
        Command::Oracle { source, count_only } => {
            let (d, inputs) = finite(source)?;
            let results = if *count_only {
                json!({"n": d.len(), "universe_size": enumerate_default(d.len())?.len()})
            } else {
                let set = optimal_lengths(&d)?;
                json!({"optimum": value(&set.optimum), "count": set.vectors.len(), "vectors": value(&set.vectors)})
            };
            Ok((inputs, results))
        }
        Command::Converge(args) => {
            let src = parse_source(&args.spec)?;
            let inputs = json!({
                "spec": echo(&args.spec, &src),
                "depth": args.depth,
                "nmax": args.nmax,
                "window": args.window,
            });
            let spec = src.as_spec()?;
            let report = estimate_optimal_lengths(spec, args.depth, args.nmax, args.window)?;
            if let Some(path) = &args.csv {
                std::fs::write(path, report.sequence.to_csv(args.depth))
                    .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            let mut results = value(&report);
            results["contradictions"] = value(&report.contradictions());
            results["csv"] = value(&args.csv);
            Ok((inputs, results))
        }
        Command::CoverageSum { terms } => {
            let c = coverage_sum(*terms)?;
            let (lo, hi) = c.decimal_bounds(6);
            let mut results = value(&c);
            results["decimal_bounds"] = json!({"places": 6, "lower": lo, "upper": hi});
            Ok((json!({"terms": terms}), results))
        }
        Command::Counterexample {
            id,
            epsilon,
            analyze: run,
        } => {
            let eps: Rational = epsilon.parse()?;
            let d = counterexample(*id, &eps)?;
            let inputs = json!({"id": id, "epsilon": value(&eps)});
            let mut results = json!({"distribution": value(&d)});
            if *run {
                results["analysis"] = analyze(&d, false)?;
                if d.len() <= crate::oracle::MAX_ORACLE_SYMBOLS {
                    let set = optimal_lengths(&d)?;
                    let mut l1s: Vec<u32> = set.vectors.iter().map(|v| v.get(1)).collect();
                    l1s.sort_unstable();
                    l1s.dedup();
                    results["oracle"] = json!({
                        "optimum": value(&set.optimum),
                        "optimal_vectors": value(&set.vectors),
                        "optimal_l1_values": l1s,
                    });
                }
            }
            Ok((inputs, results))
        }
        Command::Battery { instances, max_n } => {
            let seed = seed_from_env();
            let tallies = run_battery(seed, *instances, *max_n);
            let failed: Vec<&str> = tallies
                .iter()
                .filter(|t| t.failures > 0)
                .map(|t| t.name)
                .collect();
            if !failed.is_empty() {
                return Err(Failure::Invariant(format!(
                    "properties failed: {} ({SEED_ENV}={seed})",
                    failed.join(", ")
                )));
            }
            Ok((
                json!({"seed": seed, "instances": instances, "max_n": max_n}),
                json!({"properties": value(&tallies)}),
            ))
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Analyze { .. } => "analyze",
        Command::ClassifyL1 { .. } => "classify-l1",
        Command::Delta { .. } => "delta",
        Command::AntiUniform { .. } => "anti-uniform",
        Command::Oracle { .. } => "oracle",
        Command::Converge(_) => "converge",
        Command::CoverageSum { .. } => "coverage-sum",
        Command::Counterexample { .. } => "counterexample",
        Command::Battery { .. } => "battery",
    }
}

/// Parses `argv` (including the program name), runs the subcommand and
/// writes the report to `out`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let name = command_name(&cli.command);
    match execute(&cli.command) {
        Ok((inputs, results)) => {
            let inputs = if cli.quiet { Value::Null } else { inputs };
            let report = Report::new(name, inputs, results);
            match report.emit_checked() {
                Some(text) => {
                    let _ = writeln!(out, "{text}");
                    0
                }
                None => {
                    let _ = writeln!(err, "error: {name} report does not round-trip through JSON");
                    1
                }
            }
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Invariant(msg)) => {
            let _ = writeln!(err, "internal invariant failure: {msg}");
            1
        }
    }
}
