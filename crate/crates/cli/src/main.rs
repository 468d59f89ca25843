//! `korobov`: command-line front end for korobov-core.
//!
//! Exit codes: 0 success, 1 other failures (including a failed bounds
//! check), 2 usage errors, 3 when a result hit the enumeration cap (the
//! partial results are still written), 4 when the requested combination is
//! not computable.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use korobov_core::harness::{
    brute_force_spectrum, run_curve, verify_bounds, BoundsOptions, BoundsReport, CellStatus,
    ComplexityCurve, CurveTemplate, Timing,
};
use korobov_core::{
    classify, info_complexity, initial_error, minimal_error_all, ComplexityResult, Criterion,
    Error, InfoClass, Norm, ProblemSpec, TractabilityReport, Verdict, WeightFamily, DEFAULT_CAP,
};

#[derive(Parser)]
#[command(name = "korobov", version, about = "Information complexity and tractability of approximation in weighted Korobov spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Information complexity n(ε, d)
    Complexity(ComplexityArgs),
    /// n-th minimal worst-case errors
    Error(ErrorArgs),
    /// Tractability verdicts for a weight family
    Classify(ClassifyArgs),
    /// Complexity over a (d, ε) grid
    Curve(CurveArgs),
    /// Check the L∞ lower/upper sandwich over a (d, ε) grid
    Bounds(BoundsArgs),
    /// Brute-force spectrum on a box [-H, H]^d
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    All,
    Std,
}

impl From<ClassArg> for InfoClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::All => InfoClass::All,
            ClassArg::Std => InfoClass::Std,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CriterionArg {
    Abs,
    Norm,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::Abs => Criterion::Abs,
            CriterionArg::Norm => Criterion::Norm,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let a: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if a.is_finite() && a > 1.0 {
        Ok(a)
    } else {
        Err("alpha must be a finite real > 1".into())
    }
}

fn parse_eps(s: &str) -> Result<f64, String> {
    let e: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if e > 0.0 && e < 1.0 {
        Ok(e)
    } else {
        Err("eps must lie in the open interval (0, 1)".into())
    }
}

fn parse_d(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(d) if d >= 1 => Ok(d),
        _ => Err("d must be an integer >= 1".into()),
    }
}

fn parse_positive(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err("expected an integer >= 1".into()),
    }
}

fn parse_sigma(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err("sigma must be a positive real".into())
    }
}

fn parse_weights(s: &str) -> Result<WeightFamily, String> {
    s.parse::<WeightFamily>().map_err(|e| e.to_string())
}

fn parse_norm(s: &str) -> Result<Norm, String> {
    s.parse::<Norm>().map_err(|e| e.to_string())
}

/// Flags shared by every command that builds a problem.
#[derive(Args)]
struct FamilyArgs {
    /// smoothness α > 1
    #[arg(long, value_parser = parse_alpha)]
    alpha: f64,
    /// weight family, e.g. poly:c=1,beta=2, geo:q=0.5, const:g=0.5,
    /// explicit:1,0.5,0.25;repeat-last
    #[arg(long, value_parser = parse_weights)]
    weights: WeightFamily,
    /// target norm: 2, inf, or a real p > 2 (classify only)
    #[arg(long, value_parser = parse_norm, default_value = "2")]
    p: Norm,
    #[arg(long, value_enum, default_value = "all")]
    class: ClassArg,
    #[arg(long, value_enum, default_value = "abs")]
    criterion: CriterionArg,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// write results here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ComplexityArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// dimension(s); repeatable or comma-separated
    #[arg(long, value_parser = parse_d, value_delimiter = ',', default_value = "1")]
    d: Vec<usize>,
    /// error threshold(s) in (0, 1); repeatable or comma-separated
    #[arg(long, value_parser = parse_eps, value_delimiter = ',', required = true)]
    eps: Vec<f64>,
    /// largest number of eigenvalues to enumerate
    #[arg(long, value_parser = parse_positive, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ErrorArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_parser = parse_d, default_value = "1")]
    d: usize,
    /// number(s) of information evaluations; repeatable or comma-separated
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u64>,
    #[arg(long, value_parser = parse_positive, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// σ values for (σ,τ)-weak tractability; repeatable or comma-separated
    #[arg(long, value_parser = parse_sigma, value_delimiter = ',', default_values_t = [0.25, 0.5, 1.0])]
    sigma: Vec<f64>,
    /// accepted for completeness; the conditions do not depend on τ
    #[arg(long)]
    tau: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_parser = parse_d, value_delimiter = ',', required = true)]
    d: Vec<usize>,
    #[arg(long, value_parser = parse_eps, value_delimiter = ',', required = true)]
    eps: Vec<f64>,
    #[arg(long, value_parser = parse_positive, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// write zero run times so the output is reproducible
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_parser = parse_d, value_delimiter = ',', required = true)]
    d: Vec<usize>,
    #[arg(long, value_parser = parse_eps, value_delimiter = ',', required = true)]
    eps: Vec<f64>,
    #[arg(long, value_parser = parse_positive, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_parser = parse_d, default_value = "1")]
    d: usize,
    /// half-width H of the box [-H, H]^d
    #[arg(long = "box", value_parser = parse_positive)]
    half_width: u64,
    /// only list eigenvalues above ε²
    #[arg(long, value_parser = parse_eps)]
    eps: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

/// A failure and the exit code it maps to.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Unsupported(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Other(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Unsupported(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Unsupported(m) | Failure::Other(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedClass(_) => Failure::Unsupported(format!(
                "only bounds available for Λ^std; exact minimal errors and complexities exist for Λ^all only ({e})"
            )),
            Error::UnsupportedCriterion(_) | Error::UnsupportedFamily(_) => {
                Failure::Unsupported(e.to_string())
            }
            Error::Domain(_) | Error::Parse { .. } => Failure::Usage(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

/// What a command produced: its text, and whether any value hit the cap.
struct Output {
    text: String,
    capped: bool,
    /// a bounds check failed
    violated: bool,
}

impl Output {
    fn new(text: String) -> Self {
        Output {
            text,
            capped: false,
            violated: false,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out_path, result) = match &cli.command {
        Command::Complexity(a) => (&a.output.out, complexity(a)),
        Command::Error(a) => (&a.output.out, minimal_errors(a)),
        Command::Classify(a) => (&a.output.out, classify_cmd(a)),
        Command::Curve(a) => (&a.output.out, curve(a)),
        Command::Bounds(a) => (&a.output.out, bounds(a)),
        Command::Oracle(a) => (&a.output.out, oracle(a)),
    };
    let output = match result {
        Ok(o) => o,
        Err(f) => {
            eprintln!("error: {}", f.message());
            return ExitCode::from(f.code());
        }
    };
    let written = match out_path {
        Some(path) => fs::write(path, &output.text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => io::stdout().write_all(output.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if output.capped {
        eprintln!("warning: the enumeration cap was hit; capped values are lower bounds");
        return ExitCode::from(3);
    }
    if output.violated {
        eprintln!("error: the bounds check failed on at least one cell");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}

/// Complexity and error computations accept only p = 2 and p = ∞.
fn computable_norm(p: Norm) -> Result<Norm, Failure> {
    match p {
        Norm::Lp(v) => Err(Failure::Usage(format!(
            "--p: only 2 or inf are computable here, got {v}; use classify for 2 < p < inf"
        ))),
        p => Ok(p),
    }
}

fn spec_for(f: &FamilyArgs, d: usize, cap: u64) -> Result<ProblemSpec, Failure> {
    Ok(ProblemSpec::new(d, f.alpha, f.weights.clone())?
        .with_norm(computable_norm(f.p)?)?
        .with_class(f.class.into())
        .with_criterion(f.criterion.into())
        .with_cap(cap))
}

fn require_all(f: &FamilyArgs) -> Result<(), Failure> {
    if f.class == ClassArg::Std {
        Err(Error::UnsupportedClass("exact values need --class all".into()).into())
    } else {
        Ok(())
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn csv_line(fields: &[String]) -> String {
    let mut line = fields.join(",");
    line.push('\n');
    line
}

#[derive(Serialize)]
struct ComplexityRow {
    d: usize,
    eps: f64,
    #[serde(flatten)]
    result: ComplexityResult,
}

fn complexity(a: &ComplexityArgs) -> Result<Output, Failure> {
    require_all(&a.family)?;
    let mut rows = Vec::new();
    for &d in &a.d {
        let spec = spec_for(&a.family, d, a.cap)?;
        for &eps in &a.eps {
            rows.push(ComplexityRow {
                d,
                eps,
                result: info_complexity(&spec, eps)?,
            });
        }
    }
    let capped = rows.iter().any(|r| r.result.capped);
    let single = rows.len() == 1;
    let text = match a.output.format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut s = csv_line(&["d".into(), "eps".into(), "n".into(), "capped".into()]);
            for r in &rows {
                s += &csv_line(&[
                    r.d.to_string(),
                    r.eps.to_string(),
                    r.result.n.to_string(),
                    r.result.capped.to_string(),
                ]);
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            for r in &rows {
                if !single {
                    write!(s, "d={} eps={} ", r.d, r.eps).unwrap();
                }
                write!(s, "n={}", r.result.n).unwrap();
                if r.result.capped {
                    s.push_str(" (capped, lower bound)");
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Output {
        capped,
        ..Output::new(text)
    })
}

#[derive(Serialize)]
struct ErrorRow {
    n: u64,
    error: f64,
}

#[derive(Serialize)]
struct ErrorReport {
    d: usize,
    initial_error: f64,
    rows: Vec<ErrorRow>,
}

fn minimal_errors(a: &ErrorArgs) -> Result<Output, Failure> {
    require_all(&a.family)?;
    let spec = spec_for(&a.family, a.d, a.cap)?;
    let mut rows = Vec::new();
    for &n in &a.n {
        let error = match minimal_error_all(&spec, n) {
            Ok(e) => e,
            Err(Error::CapExceeded { cap, .. }) => {
                return Err(Failure::Other(format!(
                    "n = {n} needs more than --cap {cap} eigenvalues; raise --cap"
                )))
            }
            Err(e) => return Err(e.into()),
        };
        rows.push(ErrorRow { n, error });
    }
    let report = ErrorReport {
        d: a.d,
        initial_error: initial_error(&spec)?,
        rows,
    };
    let text = match a.output.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = csv_line(&["n".into(), "error".into()]);
            for r in &report.rows {
                s += &csv_line(&[r.n.to_string(), r.error.to_string()]);
            }
            s
        }
        Format::Table => {
            let mut s = format!("initial error {}\n", report.initial_error);
            for r in &report.rows {
                writeln!(s, "n={} e={}", r.n, r.error).unwrap();
            }
            s
        }
    };
    Ok(Output::new(text))
}

fn verdict_parts(v: Verdict) -> (&'static str, String, String) {
    match v {
        Verdict::Holds => ("holds", String::new(), String::new()),
        Verdict::Fails => ("fails", String::new(), String::new()),
        Verdict::Open { nec, suff } => ("open", nec.to_string(), suff.to_string()),
    }
}

fn classify_cmd(a: &ClassifyArgs) -> Result<Output, Failure> {
    if a.tau.is_some() {
        eprintln!("note: --tau is ignored; the (sigma,tau)-WT conditions do not depend on tau");
    }
    let f = &a.family;
    let report: TractabilityReport = classify(
        &f.weights,
        f.alpha,
        f.p,
        f.class.into(),
        f.criterion.into(),
        &a.sigma,
    )?;
    let exponent = |x: Option<f64>| x.map_or("none".to_string(), |v| v.to_string());
    let text = match a.output.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = csv_line(&["notion".into(), "verdict".into(), "nec".into(), "suff".into()]);
            for e in &report.conditions {
                let (v, nec, suff) = verdict_parts(e.verdict);
                s += &csv_line(&[e.notion.clone(), v.into(), nec, suff]);
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            for e in &report.conditions {
                writeln!(s, "{}: {}", e.notion, e.verdict).unwrap();
            }
            writeln!(s, "tau_star: {}", exponent(report.tau_star)).unwrap();
            writeln!(s, "t_star: {}", exponent(report.t_star)).unwrap();
            for n in &report.notes {
                writeln!(s, "note: {n}").unwrap();
            }
            s
        }
    };
    Ok(Output::new(text))
}

fn template(f: &FamilyArgs, cap: u64) -> Result<CurveTemplate, Failure> {
    Ok(CurveTemplate {
        p: computable_norm(f.p)?,
        info_class: f.class.into(),
        criterion: f.criterion.into(),
        cap,
        ..CurveTemplate::new(f.weights.clone(), f.alpha)
    })
}

fn curve(a: &CurveArgs) -> Result<Output, Failure> {
    require_all(&a.family)?;
    // validates the family for every dimension before the grid runs
    for &d in &a.d {
        spec_for(&a.family, d, a.cap)?;
    }
    let timing = if a.no_timing { Timing::Omit } else { Timing::Record };
    let c: ComplexityCurve = run_curve(&template(&a.family, a.cap)?, &a.eps, &a.d, timing)?;
    if let Some(cell) = c.cells.iter().find(|c| c.error.is_some()) {
        return Err(Failure::Other(format!(
            "cell d={} eps={}: {}",
            cell.d,
            cell.eps,
            cell.error.as_deref().unwrap_or_default()
        )));
    }
    let capped = c.cells.iter().any(|c| c.capped());
    let text = match a.output.format {
        Format::Json => {
            let mut s = c.to_json();
            s.push('\n');
            s
        }
        Format::Csv => c.to_csv_string()?,
        Format::Table => {
            let mut s = format!("{:>4} {:>12} {:>14} {:>7} {:>12}\n", "d", "eps", "n", "capped", "runtime_ms");
            for cell in &c.cells {
                let n = cell.n().map_or(String::new(), |n| n.to_string());
                writeln!(
                    s,
                    "{:>4} {:>12} {:>14} {:>7} {:>12}",
                    cell.d,
                    cell.eps,
                    n,
                    cell.capped(),
                    cell.runtime_ms
                )
                .unwrap();
            }
            s
        }
    };
    Ok(Output {
        capped,
        ..Output::new(text)
    })
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

fn status_name(s: CellStatus) -> &'static str {
    match s {
        CellStatus::Pass => "pass",
        CellStatus::Fail => "fail",
        CellStatus::Skipped => "skipped",
    }
}

fn bounds(a: &BoundsArgs) -> Result<Output, Failure> {
    if a.family.p == Norm::L2 || matches!(a.family.p, Norm::Lp(_)) {
        eprintln!("note: bounds always uses p = inf");
    }
    for &d in &a.d {
        ProblemSpec::new(d, a.family.alpha, a.family.weights.clone())?;
    }
    let t = CurveTemplate {
        cap: a.cap,
        ..CurveTemplate::new(a.family.weights.clone(), a.family.alpha)
    };
    let report: BoundsReport = verify_bounds(&t, &a.eps, &a.d, BoundsOptions::default())?;
    let header = ["d", "eps", "status", "lower_bound", "n_norm", "n_abs", "n_spline", "spline_log_m", "spline_lambda"];
    let rows: Vec<Vec<String>> = report
        .cells
        .iter()
        .map(|c| {
            vec![
                c.d.to_string(),
                c.eps.to_string(),
                status_name(c.status).to_string(),
                c.lower_bound.to_string(),
                opt(c.n_norm),
                opt(c.n_abs),
                opt(c.n_spline),
                opt(c.spline_log_m),
                opt(c.spline_lambda),
            ]
        })
        .collect();
    let text = match a.output.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = csv_line(&header.map(String::from));
            for r in &rows {
                s += &csv_line(r);
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            for (r, cell) in rows.iter().zip(&report.cells) {
                let fields: Vec<String> = header
                    .iter()
                    .zip(r)
                    .filter(|(_, v)| !v.is_empty())
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect();
                s += &fields.join(" ");
                for f in &cell.failures {
                    write!(s, " [{f}]").unwrap();
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Output {
        text,
        capped: report.count(CellStatus::Skipped) > 0,
        violated: !report.all_passed(),
    })
}

fn oracle(a: &OracleArgs) -> Result<Output, Failure> {
    let spec = ProblemSpec::new(a.d, a.family.alpha, a.family.weights.clone())?;
    let spectrum = match brute_force_spectrum(&spec, a.half_width) {
        Ok(s) => s,
        Err(Error::CapExceeded { cap, .. }) => {
            return Err(Failure::Usage(format!("--box: (2H+1)^d exceeds the limit of {cap} points")))
        }
        Err(e) => return Err(e.into()),
    };
    let threshold = a.eps.map_or(0.0, |e| e * e);
    let rows: Vec<(f64, u64)> = spectrum.into_iter().filter(|(v, _)| *v > threshold).collect();
    let text = match a.output.format {
        Format::Json => {
            let v: Vec<serde_json::Value> = rows
                .iter()
                .map(|(l, c)| serde_json::json!({"lambda": l, "count": c}))
                .collect();
            json(&v)
        }
        Format::Csv => {
            let mut s = csv_line(&["lambda".into(), "count".into()]);
            for (l, c) in &rows {
                s += &csv_line(&[l.to_string(), c.to_string()]);
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            for (l, c) in &rows {
                writeln!(s, "lambda={l} count={c}").unwrap();
            }
            s
        }
    };
    Ok(Output::new(text))
}
