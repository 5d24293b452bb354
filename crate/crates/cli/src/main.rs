//! `hoqe`: quantifier elimination over the quaternions and octonions.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 backend limitation
//! (partial result printed), 3 verification disagreement.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use hoqe::algebra::Algebra;
use hoqe::formula::{parse_alg, AlgFormula};
use hoqe::invariants::{enum_words, InvariantScheme};
use hoqe::qe::{Order, QeOptions};
use hoqe::realify::Realification;
use hoqe::transfer::{
    run_transfer, stats, synthetic_stats, Status, TransferOptions, TransferReport,
};
use hoqe::verify::{check_equivalence, check_orbit_invariance, CheckOptions};
use hoqe::Error;

// Writes to stdout; a closed pipe ends the process quietly.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        if write!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

const EXIT_USAGE: u8 = 1;
const EXIT_BACKEND: u8 = 2;
const EXIT_DISAGREE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "hoqe",
    version,
    about = "Quantifier elimination over the quaternions and octonions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eliminate all quantifiers of a formula.
    Eliminate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        backend: Backend,
    },
    /// Compare a formula with a claimed quantifier-free equivalent, and check
    /// that the latter is invariant under automorphisms.
    Check {
        #[command(flatten)]
        common: Common,
        /// The original formula.
        #[command(flatten)]
        input: Input,
        /// The quantifier-free formula to compare against.
        #[arg(long, value_name = "FORMULA", conflicts_with = "eliminated_file")]
        eliminated: Option<String>,
        #[arg(long, value_name = "PATH")]
        eliminated_file: Option<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
        /// Pairs used by the orbit check.
        #[arg(long, default_value_t = 200)]
        orbit_samples: usize,
    },
    /// Dump the invariant scheme of arity m.
    Invariants {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'm', default_value_t = 1)]
        m: usize,
        /// Longest octonion word.
        #[arg(long, default_value_t = 4)]
        maxlen: usize,
        /// Drop entries whose polynomial repeats an earlier one.
        #[arg(long)]
        dedup: bool,
    },
    /// List the parenthesized words in m letters.
    Words {
        #[arg(short = 'm', default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        maxlen: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the realification of a formula.
    Realify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        no_simplify: bool,
    },
    /// Size counts of the image formula, without running elimination.
    Stats {
        #[command(flatten)]
        common: Common,
        /// Formula to measure; without it the counts are for the shape (r, m, l).
        #[command(flatten)]
        input: Input,
        #[arg(short = 'r')]
        r: Option<usize>,
        #[arg(short = 'm')]
        m: Option<usize>,
        #[arg(short = 'l')]
        l: Option<usize>,
    },
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, value_parser = parse_algebra, default_value = "quat")]
    algebra: Algebra,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Inline formula.
    #[arg(
        short = 'e',
        long = "expr",
        value_name = "FORMULA",
        conflicts_with = "file"
    )]
    expr: Option<String>,
    /// File holding one formula.
    #[arg(short = 'f', long = "file", value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Backend {
    /// Skip simplification, reproducing the raw counts.
    #[arg(long)]
    no_simplify: bool,
    #[arg(long, value_parser = parse_order, default_value = "auto")]
    order: Order,
    #[arg(long, default_value_t = hoqe::qe::DEFAULT_MAX_CLAUSES)]
    max_clauses: usize,
    #[arg(long, default_value_t = hoqe::qe::DEFAULT_MAX_MONOMIALS)]
    max_monomials: usize,
    #[arg(long)]
    dedup: bool,
}

#[derive(Args, Debug, Clone)]
struct Sampling {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 32)]
    witness_bound: usize,
    /// Bound on numerators and denominators of sampled coordinates.
    #[arg(long, default_value_t = 10)]
    bound: i64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
}

fn parse_algebra(s: &str) -> Result<Algebra, String> {
    s.parse::<Algebra>().map_err(|e| e.to_string())
}

fn parse_order(s: &str) -> Result<Order, String> {
    s.parse()
}

/// Everything that determines a run, echoed into JSON output.
#[derive(Serialize, Default)]
struct RunConfig {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    algebra: Option<Algebra>,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    file: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eliminated: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    backend: Option<TransferOptions>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    orbit_samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    maxlen: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dedup: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    simplify: Option<bool>,
    format: Option<Format>,
}

/// A failed command: message plus exit code.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Eliminate {
            common,
            input,
            backend,
        } => eliminate(&common, &input, &backend),
        Command::Check {
            common,
            input,
            eliminated,
            eliminated_file,
            sampling,
            orbit_samples,
        } => check(
            &common,
            &input,
            eliminated,
            eliminated_file,
            &sampling,
            orbit_samples,
        ),
        Command::Invariants {
            common,
            m,
            maxlen,
            dedup,
        } => invariants(&common, m, maxlen, dedup),
        Command::Words { m, maxlen, format } => words(m, maxlen, format),
        Command::Realify {
            common,
            input,
            no_simplify,
        } => realify(&common, &input, no_simplify),
        Command::Stats {
            common,
            input,
            r,
            m,
            l,
        } => stats_cmd(&common, &input, r, m, l),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn read_source(input: &Input) -> Result<String, Failure> {
    match (&input.expr, &input.file) {
        (Some(e), _) => Ok(e.clone()),
        (None, Some(p)) => fs::read_to_string(p)
            .map(|s| s.trim().to_string())
            .map_err(|e| Failure(EXIT_USAGE, format!("cannot read {}: {e}", p.display()))),
        (None, None) => Err(Failure(
            EXIT_USAGE,
            "no formula given (use -e or -f)".into(),
        )),
    }
}

fn parse_formula(src: &str) -> Result<AlgFormula, Failure> {
    parse_alg(src).map_err(|e| Failure(EXIT_USAGE, format!("parse error: {e}")))
}

fn base_config(command: &'static str, common: &Common, input: Option<&Input>) -> RunConfig {
    RunConfig {
        command,
        algebra: Some(common.algebra),
        input: input.and_then(|i| i.expr.clone()),
        file: input.and_then(|i| i.file.clone()),
        format: Some(common.format),
        ..RunConfig::default()
    }
}

fn print_json(v: &Value) {
    outln!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn print_report_text(report: &TransferReport) {
    let v = serde_json::to_value(report).expect("serializable");
    let Value::Object(map) = v else { return };
    for (k, v) in map {
        match v {
            Value::Object(inner) => {
                let parts: Vec<String> = inner.iter().map(|(a, b)| format!("{a}={b}")).collect();
                outln!("{k}: {}", parts.join(" "));
            }
            Value::String(s) => outln!("{k}: {s}"),
            other => outln!("{k}: {other}"),
        }
    }
}

fn eliminate(common: &Common, input: &Input, backend: &Backend) -> CmdResult {
    let src = read_source(input)?;
    let phi = parse_formula(&src)?;
    let options = TransferOptions {
        qe: QeOptions {
            order: backend.order,
            max_clauses: backend.max_clauses,
            max_monomials: backend.max_monomials,
            simplify: !backend.no_simplify,
        },
        simplify: !backend.no_simplify,
        dedup: backend.dedup,
    };
    let mut config = base_config("eliminate", common, Some(input));
    config.backend = Some(options.clone());
    match run_transfer(&phi, common.algebra, &options) {
        Ok(out) => {
            match common.format {
                Format::Json => print_json(&json!({
                    "config": config,
                    "formula": out.formula.to_string(),
                    "report": out.report,
                })),
                Format::Text => {
                    outln!("{}", out.formula);
                    print_report_text(&out.report);
                }
            }
            Ok(0)
        }
        Err(failure) => {
            let limited = matches!(
                failure.report.status,
                Status::DegreeTooHigh | Status::SizeLimitExceeded
            );
            let partial = failure.partial.as_ref().map(|p| p.to_string());
            match common.format {
                Format::Json => print_json(&json!({
                    "config": config,
                    "error": failure.error.to_string(),
                    "partial": partial,
                    "report": failure.report,
                })),
                Format::Text => {
                    outln!("error: {}", failure.error);
                    if let Some(p) = &partial {
                        outln!("partial: {p}");
                    }
                    print_report_text(&failure.report);
                }
            }
            Ok(if limited { EXIT_BACKEND } else { EXIT_USAGE })
        }
    }
}

fn check(
    common: &Common,
    input: &Input,
    eliminated: Option<String>,
    eliminated_file: Option<PathBuf>,
    sampling: &Sampling,
    orbit_samples: usize,
) -> CmdResult {
    let original = parse_formula(&read_source(input)?)?;
    let elim_src = read_source(&Input {
        expr: eliminated,
        file: eliminated_file,
    })
    .map_err(|Failure(c, m)| {
        Failure(
            c,
            m.replace("-e or -f", "--eliminated or --eliminated-file"),
        )
    })?;
    let elim = parse_formula(&elim_src)?;
    let opts = CheckOptions {
        samples: sampling.samples,
        seed: sampling.seed,
        bound: sampling.bound,
        witness_bound: sampling.witness_bound,
    };
    let eq = check_equivalence(&original, &elim, common.algebra, &opts)?;
    let orbit_opts = CheckOptions {
        samples: orbit_samples,
        ..opts.clone()
    };
    let orbit = check_orbit_invariance(&elim, common.algebra, &[], &orbit_opts)?;
    let passed = eq.passed() && orbit.invariant();
    let mut config = base_config("check", common, Some(input));
    config.eliminated = Some(elim_src);
    config.seed = Some(opts.seed);
    config.samples = Some(opts.samples);
    config.orbit_samples = Some(orbit_samples);
    config.witness_bound = Some(opts.witness_bound);
    config.bound = Some(opts.bound);
    match common.format {
        Format::Json => print_json(&json!({
            "config": config,
            "passed": passed,
            "equivalence": eq,
            "orbit": orbit,
        })),
        Format::Text => {
            out!("{eq}");
            let orbit_text = orbit.to_string();
            // the octonion note is already printed once
            let orbit_text = orbit_text
                .lines()
                .filter(|l| !l.starts_with("note: ") || eq.header.is_none());
            for line in orbit_text {
                outln!("{line}");
            }
            outln!("{}", if passed { "PASS" } else { "FAIL" });
        }
    }
    Ok(if passed { 0 } else { EXIT_DISAGREE })
}

fn invariants(common: &Common, m: usize, maxlen: usize, dedup: bool) -> CmdResult {
    let vars = InvariantScheme::default_vars(m);
    let mut scheme = match common.algebra {
        Algebra::Quat => InvariantScheme::quat(&vars)?,
        Algebra::Oct => InvariantScheme::oct(&vars, maxlen)?,
    };
    if dedup {
        scheme = scheme.dedup();
    }
    match common.format {
        Format::Json => {
            let mut config = base_config("invariants", common, None);
            config.m = Some(m);
            config.maxlen = (common.algebra == Algebra::Oct).then_some(maxlen);
            config.dedup = Some(dedup);
            let entries: Vec<Value> = scheme
                .entries
                .iter()
                .map(|e| json!({"label": e.label, "term": e.term.to_string(), "poly": e.poly.to_string()}))
                .collect();
            print_json(&json!({"config": config, "count": scheme.len(), "entries": entries}));
        }
        Format::Text => out!("{}", scheme.dump()),
    }
    Ok(0)
}

fn words(m: usize, maxlen: usize, format: Format) -> CmdResult {
    let ws: Vec<String> = enum_words(m, maxlen)
        .iter()
        .map(|w| w.to_string())
        .collect();
    match format {
        Format::Json => {
            let config = RunConfig {
                command: "words",
                m: Some(m),
                maxlen: Some(maxlen),
                format: Some(format),
                ..RunConfig::default()
            };
            print_json(&json!({"config": config, "count": ws.len(), "words": ws}));
        }
        Format::Text => {
            for w in ws {
                outln!("{w}");
            }
        }
    }
    Ok(0)
}

fn realify(common: &Common, input: &Input, no_simplify: bool) -> CmdResult {
    let phi = parse_formula(&read_source(input)?)?;
    let mut ctx = Realification::new(common.algebra, &phi.free_vars());
    if no_simplify {
        ctx = ctx.without_simplification();
    }
    let real = ctx.realify_formula(&phi)?;
    match common.format {
        Format::Json => {
            let mut config = base_config("realify", common, Some(input));
            config.simplify = Some(!no_simplify);
            let vars: Vec<&str> = real.all_vars().into_iter().map(|v| v.name()).collect();
            print_json(&json!({
                "config": config,
                "formula": real.to_string(),
                "atoms": real.atom_count(),
                "vars": vars,
            }));
        }
        Format::Text => outln!("{real}"),
    }
    Ok(0)
}

fn stats_cmd(
    common: &Common,
    input: &Input,
    r: Option<usize>,
    m: Option<usize>,
    l: Option<usize>,
) -> CmdResult {
    let mut config = base_config("stats", common, Some(input));
    config.simplify = Some(false);
    let report = if input.expr.is_some() || input.file.is_some() {
        if r.is_some() || m.is_some() || l.is_some() {
            return Err(Failure(
                EXIT_USAGE,
                "give either a formula or -r/-m/-l, not both".into(),
            ));
        }
        let phi = parse_formula(&read_source(input)?)?;
        stats(&phi, common.algebra, &[])?
    } else {
        let (r, m, l) = (r.unwrap_or(1), m.unwrap_or(1), l.unwrap_or(1));
        config.r = Some(r);
        config.m = Some(m);
        config.l = Some(l);
        synthetic_stats(r, m, l, common.algebra)?
    };
    match common.format {
        Format::Json => print_json(&json!({"config": config, "report": report})),
        Format::Text => {
            outln!("quantified: {}", report.quantified_real_vars);
            outln!("atoms: {}", report.atoms_pre_qe);
            outln!("total_vars: {}", report.total_real_vars);
            if !report.conjunctive {
                outln!("note: matrix is not a conjunction of atoms; counts are not canonical");
            }
            print_report_text(&report);
        }
    }
    Ok(0)
}
