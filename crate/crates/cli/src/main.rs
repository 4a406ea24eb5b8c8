mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ggr_core::golden::{graph_csv, graph_sample, witness_label, Evaluator, GoldenError, GoldenOptions};
use ggr_core::numerics::{Bracket, SolveOptions};
use ggr_core::univoque::{
    enumerate_expansions, estimate_g, parse_rational, Alphabet, EnumerateOptions, EstimateOptions,
};
use ggr_core::verify::{run_suite, Suite, VerifyConfig, SCHEMA_VERSION};
use serde_json::{json, Value};

/// Bits carried by double-double arithmetic.
const MAX_PRECISION: u32 = 106;

#[derive(Parser)]
#[command(name = "ggr", version, about = "Generalised golden ratios of digit alphabets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Working precision in bits (64 to 106).
    #[arg(long, env = "GGR_PRECISION", default_value_t = MAX_PRECISION, global = true)]
    precision: u32,
    /// Stopping width for root solving, or for bisection on the numeric path.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomly sampled parameters.
    #[arg(long, default_value_t = 2024, global = true)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// The golden ratio of {0, 1, m} or of an arbitrary rational alphabet.
    Golden {
        #[arg(long, required_unless_present = "alphabet", conflicts_with = "alphabet")]
        m: Option<String>,
        /// Comma-separated digits, e.g. 0,1,4,5.
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Samples m -> G(m) on an interval inside (1, 2].
    Graph {
        #[arg(long = "m-lo", default_value_t = 1.001)]
        m_lo: f64,
        #[arg(long = "m-hi", default_value_t = 2.0)]
        m_hi: f64,
        #[arg(long, default_value_t = 1e-3)]
        resolution: f64,
    },
    /// Runs a verification suite.
    Verify {
        suite: String,
        /// Parameters drawn by the cross-validation suite.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Counts the expansions of x digit by digit.
    Count {
        #[arg(long)]
        x: String,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value = "0,1")]
        alphabet: String,
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
}

enum Failure {
    Usage(String),
    Undecided(String),
}

/// Text to emit and the exit code that goes with it.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, code: 0 }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn golden_failure(e: GoldenError) -> Failure {
    match e {
        GoldenError::ParameterTooSmall(_) | GoldenError::UnsortedAlphabet => usage(e),
        _ => Failure::Undecided(e.to_string()),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn json_only(format: Option<Format>) -> Result<(), Failure> {
    match format {
        None | Some(Format::Json) => Ok(()),
        Some(_) => Err(usage("this command only writes json")),
    }
}

fn rational(s: &str) -> Result<Bracket, Failure> {
    parse_rational(s).map(|q| Bracket::from_rational(&q)).map_err(usage)
}

fn golden(cli: &Cli, m: Option<&str>, alphabet: Option<&str>) -> Result<Outcome, Failure> {
    json_only(cli.format)?;
    let mut solve = SolveOptions::default();
    if let Some(tol) = cli.tol {
        solve.tol = tol;
    }
    let ev = Evaluator::new(GoldenOptions { solve, ..GoldenOptions::default() });
    let (g, alphabet) = match (m, alphabet) {
        (Some(m), _) => (ev.golden(rational(m)?).map_err(golden_failure)?, None),
        (None, Some(a)) => {
            let a: Alphabet = a.parse().map_err(usage)?;
            if let [x, y, z] = a.digits() {
                (ev.golden_alphabet(x, y, z).map_err(golden_failure)?, Some(a))
            } else {
                let mut opts = EstimateOptions::default();
                if let Some(tol) = cli.tol {
                    opts.tol = tol;
                }
                let e = estimate_g(&a, &opts);
                let width = e.lower.map(|l| (e.upper - l).to_f64());
                let v = json!({
                    "schemaVersion": SCHEMA_VERSION,
                    "method": "estimate",
                    "estimate": e,
                    "enclosureWidth": width,
                });
                return Ok(Outcome::ok(pretty(&v)));
            }
        }
        (None, None) => return Err(usage("either --m or --alphabet is required")),
    };
    let v = json!({
        "schemaVersion": SCHEMA_VERSION,
        "method": "ternary",
        "alphabet": alphabet,
        "m": g.m,
        "reduced": g.reduced,
        "value": g.value,
        "branch": g.branch,
        "witness": witness_label(&g.witness),
        "locate": g.witness,
        "enclosureWidth": g.value.width(),
    });
    Ok(Outcome::ok(pretty(&v)))
}

fn graph(cli: &Cli, m_lo: f64, m_hi: f64, resolution: f64) -> Result<Outcome, Failure> {
    if !(m_lo > 1.0 && m_lo < m_hi && m_hi <= 2.0) {
        return Err(usage(format!("need 1 < m-lo < m-hi <= 2, got {m_lo} and {m_hi}")));
    }
    if !(resolution > 0.0) {
        return Err(usage("resolution must be positive"));
    }
    let rows = graph_sample(&Evaluator::default(), m_lo, m_hi, resolution).map_err(golden_failure)?;
    let text = match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => graph_csv(&rows),
        Format::Svg => plot::svg_from_csv(&graph_csv(&rows)).map_err(Failure::Undecided)?,
        Format::Json => pretty(&json!({ "schemaVersion": SCHEMA_VERSION, "rows": rows })),
    };
    Ok(Outcome::ok(text))
}

fn verify(cli: &Cli, suite: &str, samples: usize) -> Result<Outcome, Failure> {
    json_only(cli.format)?;
    let suite: Suite = suite.parse().map_err(usage)?;
    let report = run_suite(suite, &VerifyConfig { seed: cli.seed, samples });
    let code = if report.passed { 0 } else { 1 };
    let v = serde_json::to_value(&report).expect("reports serialize");
    Ok(Outcome { text: pretty(&v), code })
}

fn count(cli: &Cli, x: &str, beta: &str, alphabet: &str, depth: usize) -> Result<Outcome, Failure> {
    json_only(cli.format)?;
    let a: Alphabet = alphabet.parse().map_err(usage)?;
    let xb = rational(x)?;
    let bb = rational(beta)?;
    if bb.lo().to_f64() <= 1.0 {
        return Err(usage(format!("beta must exceed 1, got {beta}")));
    }
    let report = enumerate_expansions(xb, bb, &a.to_brackets(), depth, EnumerateOptions::default()).map_err(usage)?;
    let digit = |i: &u8| a.digits()[*i as usize].to_string();
    let prefixes: Vec<String> = report.prefixes.iter().map(|p| p.iter().map(digit).collect::<Vec<_>>().join(",")).collect();
    let pinned: Vec<String> = report.pinned_words.iter().map(|w| a.format_word(w)).collect();
    let v = json!({
        "schemaVersion": SCHEMA_VERSION,
        "alphabet": a,
        "x": xb,
        "beta": bb,
        "depth": report.depth,
        "aliveCount": report.alive_count,
        "truncated": report.truncated,
        "prefixes": prefixes,
        "pinnedWords": pinned,
    });
    Ok(Outcome { text: pretty(&v), code: if report.truncated { 3 } else { 0 } })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    if cli.precision < 64 {
        return Err(usage(format!("precision must be at least 64 bits, got {}", cli.precision)));
    }
    if cli.precision > MAX_PRECISION {
        return Err(usage(format!("precision above {MAX_PRECISION} bits is not available, got {}", cli.precision)));
    }
    if let Some(tol) = cli.tol {
        if !(tol > 0.0) {
            return Err(usage(format!("tol must be positive, got {tol}")));
        }
    }
    match &cli.command {
        Command::Golden { m, alphabet } => golden(cli, m.as_deref(), alphabet.as_deref()),
        Command::Graph { m_lo, m_hi, resolution } => graph(cli, *m_lo, *m_hi, *resolution),
        Command::Verify { suite, samples } => verify(cli, suite, *samples),
        Command::Count { x, beta, alphabet, depth } => count(cli, x, beta, alphabet, *depth),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Undecided(msg)) => {
            eprintln!("undecided: {msg}");
            return ExitCode::from(3);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.text),
    }
    ExitCode::from(outcome.code)
}
