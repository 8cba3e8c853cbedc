//! Command-line surface: `analyze`, `verify`, `scan`, `count`.
//!
//! Exit codes: 0 pass, 1 claim mismatch, 2 usage error, 3 budget exhausted.
//! The node budget for pruned searches comes from `--budget`, then the
//! `THETA_CYCLE_BUDGET` environment variable, then the built-in default.

use crate::cohomology::{hodge_polynomial, PoincarePolynomial};
use crate::decomposability::SymmetricPair;
use crate::enumeration::{count_patterns, DEFAULT_NODE_BUDGET};
use crate::parabolic::{canonicalize, invariants, Family, Lambda, LevelPattern, ParabolicInvariants};
use crate::root_system::Signature;
use crate::verifier::{verify_theorem, VerificationReport, VerifyError};
use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

pub const BUDGET_ENV_VAR: &str = "THETA_CYCLE_BUDGET";

const EXIT_PASS: u8 = 0;
const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "theta-cycles",
    version,
    about = "Parabolic classes of su(p,q): invariants, cohomology, survivor verification"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, Hodge polynomial and decomposability verdicts of one class
    Analyze(AnalyzeArgs),
    /// Check the singleton-survivor claim for one signature and pair
    Verify(VerifyArgs),
    /// Verify a rectangle of signatures, one report row per (p,q)
    Scan(ScanArgs),
    /// Number of level patterns of a signature
    Count(CountArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["lambda", "pattern"])))]
struct AnalyzeArgs {
    /// First block size (required with --lambda)
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    p: Option<u32>,
    /// Second block size (required with --lambda)
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    q: Option<u32>,
    /// Dominant coordinates "a_1,...,a_(p+q)"
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Level pattern "x|y>x|y>..."
    #[arg(long)]
    pattern: Option<String>,
    /// Write the JSON report to this path
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    p: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    q: u32,
    /// Symmetric-pair family: row1 or row2
    #[arg(long, value_parser = parse_family)]
    pair: Family,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    k: u32,
    /// Write the JSON report to this path
    #[arg(long)]
    json: Option<PathBuf>,
    /// Node budget for the pruned search
    #[arg(long)]
    budget: Option<u64>,
    /// Pass when |Q \ D| equals this count instead of requiring the
    /// distinguished singleton
    #[arg(long)]
    expect_count: Option<usize>,
    /// Progress lines on stderr during long searches
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct ScanArgs {
    /// Inclusive range "A..B" (or a single value) for p
    #[arg(long = "p-range", value_parser = parse_range)]
    p_range: (u32, u32),
    /// Inclusive range "C..D" (or a single value) for q
    #[arg(long = "q-range", value_parser = parse_range)]
    q_range: (u32, u32),
    #[arg(long, value_parser = parse_family)]
    pair: Family,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    k: u32,
    /// Output format: csv or json
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: OutputFormat,
    /// Write to this path instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    p: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    q: u32,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Csv,
    Json,
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::from_str(s)
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(format!("unknown format {other:?}, expected csv or json")),
    }
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi),
        None => (s, s),
    };
    let lo: u32 = lo.trim().parse().map_err(|_| format!("bad range bound {lo:?}"))?;
    let hi: u32 = hi.trim().parse().map_err(|_| format!("bad range bound {hi:?}"))?;
    if lo == 0 {
        return Err("range bounds must be at least 1".to_string());
    }
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn resolve_budget(flag: Option<u64>) -> Result<u64, String> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(BUDGET_ENV_VAR) {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| format!("{BUDGET_ENV_VAR} must be an integer, got {value:?}")),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_USAGE)
}

fn stderr_progress(nodes: u64) {
    eprintln!("... {nodes} nodes visited");
}

pub fn run() -> ExitCode {
    match Cli::parse().command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Count(args) => cmd_count(args),
    }
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct AnalyzeJson {
    signature: Signature,
    pattern: String,
    r_plus: u64,
    r_minus: u64,
    r_total: u64,
    holomorphic: bool,
    antiholomorphic: bool,
    levi: Vec<(u32, u32)>,
    hodge: HodgeJson,
    pairs: Vec<PairVerdictJson>,
}

#[derive(Serialize, Deserialize)]
struct HodgeJson {
    shift: (u64, u64),
    diag: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct PairVerdictJson {
    family: Family,
    k: u32,
    decomposable: bool,
    witness_s: Option<usize>,
}

fn parse_lambda_coords(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad coordinate {:?}", tok.trim()))
        })
        .collect()
}

fn pair_verdicts(pattern: &LevelPattern, sig: Signature) -> Vec<PairVerdictJson> {
    let mut verdicts = Vec::new();
    for family in [Family::Row1, Family::Row2] {
        let pair = match SymmetricPair::new(family, 1) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if pair.validate(sig).is_err() {
            continue;
        }
        let decomposable =
            crate::decomposability::is_discretely_decomposable(pattern, pair, sig)
                .expect("validated");
        let witness_s =
            crate::decomposability::non_decomposability_witness(pattern, pair, sig)
                .expect("validated");
        verdicts.push(PairVerdictJson {
            family,
            k: 1,
            decomposable,
            witness_s,
        });
    }
    verdicts
}

fn diag_as_u64(poly: &PoincarePolynomial) -> Result<Vec<u64>, String> {
    poly.diag()
        .iter()
        .map(|c| {
            u64::try_from(c).map_err(|_| "hodge coefficient exceeds u64 range".to_string())
        })
        .collect()
}

fn render_analysis(
    sig: Signature,
    pattern: &LevelPattern,
    inv: &ParabolicInvariants,
    poly: &PoincarePolynomial,
    pairs: &[PairVerdictJson],
) -> String {
    let mut out = String::new();
    let levi = pattern
        .levels()
        .iter()
        .map(|&(x, y)| format!("u({x},{y})"))
        .collect::<Vec<_>>()
        .join(" + ");
    let diag = poly
        .diag()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let _ = writeln!(out, "signature         {sig}");
    let _ = writeln!(out, "pattern           {pattern}");
    let _ = writeln!(out, "levi              {levi}");
    let _ = writeln!(out, "R+                {}", inv.r_plus);
    let _ = writeln!(out, "R-                {}", inv.r_minus);
    let _ = writeln!(out, "R                 {}", inv.r_total);
    let _ = writeln!(out, "holomorphic       {}", inv.holomorphic);
    let _ = writeln!(out, "anti-holomorphic  {}", inv.antiholomorphic);
    let _ = writeln!(
        out,
        "hodge shift       ({},{})",
        poly.shift().0,
        poly.shift().1
    );
    let _ = writeln!(out, "hodge diag        [{diag}]");
    for v in pairs {
        let verdict = if v.decomposable {
            "discretely decomposable".to_string()
        } else {
            match v.witness_s {
                Some(s) => format!("not discretely decomposable (witness s={s})"),
                None => "not discretely decomposable".to_string(),
            }
        };
        let _ = writeln!(out, "{} (k={})       {verdict}", v.family, v.k);
    }
    out
}

fn cmd_analyze(args: AnalyzeArgs) -> ExitCode {
    let (sig, pattern) = if let Some(lambda_text) = &args.lambda {
        let (p, q) = match (args.p, args.q) {
            (Some(p), Some(q)) => (p, q),
            _ => return usage_error("--lambda requires --p and --q"),
        };
        let sig = match Signature::new(p, q) {
            Ok(s) => s,
            Err(e) => return usage_error(e),
        };
        let coords = match parse_lambda_coords(lambda_text) {
            Ok(c) => c,
            Err(e) => return usage_error(e),
        };
        let lambda = match Lambda::new(sig, coords) {
            Ok(l) => l,
            Err(e) => return usage_error(e),
        };
        (sig, canonicalize(&lambda))
    } else {
        let text = args.pattern.as_ref().expect("clap group guarantees one input");
        let pattern: LevelPattern = match text.parse::<LevelPattern>() {
            Ok(p) => p.canonical_class(),
            Err(e) => return usage_error(e),
        };
        let sig = pattern.signature();
        if let Some(p) = args.p {
            if p != sig.p() {
                return usage_error(format!("--p {} contradicts pattern block sum {}", p, sig.p()));
            }
        }
        if let Some(q) = args.q {
            if q != sig.q() {
                return usage_error(format!("--q {} contradicts pattern block sum {}", q, sig.q()));
            }
        }
        (sig, pattern)
    };

    let inv = invariants(&pattern);
    let poly = hodge_polynomial(&pattern);
    let pairs = pair_verdicts(&pattern, sig);

    print!("{}", render_analysis(sig, &pattern, &inv, &poly, &pairs));

    if let Some(path) = &args.json {
        let diag = match diag_as_u64(&poly) {
            Ok(d) => d,
            Err(e) => return usage_error(e),
        };
        let report = AnalyzeJson {
            signature: sig,
            pattern: pattern.to_string(),
            r_plus: inv.r_plus,
            r_minus: inv.r_minus,
            r_total: inv.r_total,
            holomorphic: inv.holomorphic,
            antiholomorphic: inv.antiholomorphic,
            levi: pattern.levels().to_vec(),
            hodge: HodgeJson {
                shift: poly.shift(),
                diag,
            },
            pairs,
        };
        let body = serde_json::to_string(&report).expect("report serializes");
        if let Err(e) = std::fs::write(path, body) {
            return usage_error(format!("cannot write {}: {e}", path.display()));
        }
    }
    ExitCode::from(EXIT_PASS)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct VerifyJson {
    pub signature: Signature,
    pub pair: SymmetricPair,
    pub t: u64,
    #[serde(rename = "Q")]
    pub q: Vec<QEntryJson>,
    pub q_minus_d: Vec<String>,
    pub expected: String,
    pub singleton: bool,
    pub matches_expected: bool,
    pub within_hypothesis: bool,
}

#[derive(Serialize, Deserialize)]
pub struct QEntryJson {
    pub pattern: String,
    pub r_plus: u64,
    pub r_minus: u64,
    pub decomposable: bool,
    pub witness_s: Option<usize>,
}

impl VerifyJson {
    pub fn from_report(report: &VerificationReport) -> Self {
        VerifyJson {
            signature: report.signature,
            pair: report.pair,
            t: report.t,
            q: report
                .q_set
                .iter()
                .map(|class| QEntryJson {
                    pattern: class.pattern.to_string(),
                    r_plus: class.invariants.r_plus,
                    r_minus: class.invariants.r_minus,
                    decomposable: class.decomposable,
                    witness_s: class.witness_s,
                })
                .collect(),
            q_minus_d: report
                .q_minus_d
                .iter()
                .map(|class| class.pattern.to_string())
                .collect(),
            expected: report.expected.to_string(),
            singleton: report.singleton,
            matches_expected: report.matches_expected,
            within_hypothesis: report.within_hypothesis,
        }
    }
}

fn render_verify(report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "signature          {}", report.signature);
    let _ = writeln!(
        out,
        "pair               {}, k={}",
        report.pair.family(),
        report.pair.k()
    );
    let _ = writeln!(out, "t                  {}", report.t);
    let _ = writeln!(out, "|Q|                {}", report.q_set.len());
    let _ = writeln!(out, "|D n Q|            {}", report.d_cap_q.len());
    let _ = writeln!(out, "|Q \\ D|            {}", report.q_minus_d.len());
    let width = report
        .q_set
        .iter()
        .map(|c| c.pattern.to_string().len())
        .max()
        .unwrap_or(7)
        .max(7);
    let _ = writeln!(out, "{:width$}  R+  R-  in D  witness", "pattern");
    for class in &report.q_set {
        let witness = class
            .witness_s
            .map(|s| format!("s={s}"))
            .unwrap_or_else(|| "-".to_string());
        let _ = writeln!(
            out,
            "{:width$}  {:<3} {:<3} {:<5} {witness}",
            class.pattern.to_string(),
            class.invariants.r_plus,
            class.invariants.r_minus,
            if class.decomposable { "yes" } else { "no" },
        );
    }
    let survivors = report
        .q_minus_d
        .iter()
        .map(|c| c.pattern.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    let _ = writeln!(out, "Q \\ D              {{{survivors}}}");
    let _ = writeln!(out, "expected           {}", report.expected);
    let _ = writeln!(out, "within hypothesis  {}", report.within_hypothesis);
    out
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let sig = match Signature::new(args.p, args.q) {
        Ok(s) => s,
        Err(e) => return usage_error(e),
    };
    let pair = match SymmetricPair::new(args.pair, args.k) {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    let budget = match resolve_budget(args.budget) {
        Ok(b) => b,
        Err(e) => return usage_error(e),
    };

    let progress: Option<&crate::enumeration::ProgressFn<'_>> =
        if args.verbose { Some(&stderr_progress) } else { None };
    let report = match verify_theorem(sig, pair, budget, progress) {
        Ok(r) => r,
        Err(VerifyError::Pair(e)) => return usage_error(e),
        Err(VerifyError::Budget(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_BUDGET);
        }
    };

    print!("{}", render_verify(&report));

    if let Some(path) = &args.json {
        let body = serde_json::to_string(&VerifyJson::from_report(&report))
            .expect("report serializes");
        if let Err(e) = std::fs::write(path, body) {
            return usage_error(format!("cannot write {}: {e}", path.display()));
        }
    }

    let pass = match args.expect_count {
        Some(n) => report.q_minus_d.len() == n,
        None => report.matches_expected,
    };
    if pass {
        println!("verdict            PASS");
        ExitCode::from(EXIT_PASS)
    } else {
        println!("verdict            FAIL");
        ExitCode::from(EXIT_MISMATCH)
    }
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ScanRow {
    p: u32,
    q: u32,
    patterns_total: Option<u64>,
    t: Option<u64>,
    q_size: Option<usize>,
    d_cap_q_size: Option<usize>,
    q_minus_d_size: Option<usize>,
    /// Surviving classes, `;`-joined canonical patterns.
    survivors: String,
    wall_ms: u64,
    error: String,
}

fn scan_cell(p: u32, q: u32, family: Family, k: u32, budget: u64) -> ScanRow {
    let start = Instant::now();
    let mut row = ScanRow {
        p,
        q,
        patterns_total: None,
        t: None,
        q_size: None,
        d_cap_q_size: None,
        q_minus_d_size: None,
        survivors: String::new(),
        wall_ms: 0,
        error: String::new(),
    };
    let mut errors: Vec<String> = Vec::new();

    match count_patterns(p, q) {
        Ok(total) => match u64::try_from(total) {
            Ok(total) => row.patterns_total = Some(total),
            Err(_) => errors.push("pattern count exceeds u64".to_string()),
        },
        Err(e) => errors.push(e.to_string()),
    }

    let sig = Signature::new(p, q).expect("scan range bounds start at 1");
    let outcome = SymmetricPair::new(family, k)
        .map_err(VerifyError::Pair)
        .and_then(|pair| verify_theorem(sig, pair, budget, None));
    match outcome {
        Ok(report) => {
            row.t = Some(report.t);
            row.q_size = Some(report.q_set.len());
            row.d_cap_q_size = Some(report.d_cap_q.len());
            row.q_minus_d_size = Some(report.q_minus_d.len());
            row.survivors = report
                .q_minus_d
                .iter()
                .map(|c| c.pattern.to_string())
                .collect::<Vec<_>>()
                .join(";");
        }
        Err(e) => errors.push(e.to_string()),
    }

    row.wall_ms = start.elapsed().as_millis() as u64;
    row.error = errors.join("; ");
    row
}

fn cmd_scan(args: ScanArgs) -> ExitCode {
    let budget = match resolve_budget(args.budget) {
        Ok(b) => b,
        Err(e) => return usage_error(e),
    };

    let mut rows = Vec::new();
    for p in args.p_range.0..=args.p_range.1 {
        for q in args.q_range.0..=args.q_range.1 {
            rows.push(scan_cell(p, q, args.pair, args.k, budget));
        }
    }

    let body = match args.format {
        OutputFormat::Json => serde_json::to_string(&rows).expect("rows serialize"),
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                writer.serialize(row).expect("row serializes");
            }
            let bytes = writer.into_inner().expect("csv buffer");
            String::from_utf8(bytes).expect("csv is utf-8")
        }
    };

    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                return usage_error(format!("cannot write {}: {e}", path.display()));
            }
        }
        None => {
            if args.format == OutputFormat::Json {
                println!("{body}");
            } else {
                print!("{body}");
            }
        }
    }
    ExitCode::from(EXIT_PASS)
}

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

fn cmd_count(args: CountArgs) -> ExitCode {
    match count_patterns(args.p, args.q) {
        Ok(n) => {
            println!("{n}");
            ExitCode::from(EXIT_PASS)
        }
        Err(e) => usage_error(e),
    }
}
