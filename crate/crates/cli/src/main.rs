use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rankin_core::cache::{EigenformCache, CACHE_ENV};
use rankin_core::exact::certified::Direction;
use rankin_core::iwasawa::{prime_scan, Conclusion, CurveInput, IwasawaCertificate};
use rankin_core::rankin::{check_level, decompose_with, verify_bounds, BoundReport, DecompositionResult, DenominatorCheck};
use rankin_core::{report, weight1_eisenstein, weight2_eisenstein, Eigenform, Error};
use rankin_core::{build_space, quadratic_character, run_selftest, Sign};

#[derive(Parser, Debug)]
#[command(name = "rankin", version, about = "Exact Rankin decompositions and mu = lambda = 0 certificates at prime level")]
struct Cli {
    /// Eigenform cache directory.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,

    /// Add wall-clock timing to JSON output.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
    Zero,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose the squared weight-one Eisenstein series at level N.
    Decompose {
        level: u64,
        #[arg(long)]
        prec: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        out: Output,
    },
    /// Print the weight-one and weight-two Eisenstein series at level N.
    Eisenstein {
        level: u64,
        #[arg(long, default_value_t = 12)]
        prec: usize,
        #[arg(long, value_enum, default_value = "text")]
        out: Output,
    },
    /// Describe the modular symbol space and its newforms.
    Space {
        level: u64,
        #[arg(long, value_enum, default_value = "plus")]
        sign: SignArg,
        #[arg(long, value_enum, default_value = "text")]
        out: Output,
    },
    /// Full report: decomposition, bound checks and prime verdicts.
    Certify {
        level: u64,
        #[arg(long)]
        modular_degree: Option<u64>,
        /// Where the modular degree came from.
        #[arg(long)]
        source: Option<String>,
        /// Rational newform to use (default: the first).
        #[arg(long)]
        label: Option<String>,
        #[arg(long, default_value_t = 100)]
        p_max: u64,
        #[arg(long, value_enum, default_value = "text")]
        out: Output,
    },
    /// Prime verdicts only.
    Scan {
        level: u64,
        #[arg(long)]
        modular_degree: Option<u64>,
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        label: Option<String>,
        #[arg(long, default_value_t = 100)]
        p_max: u64,
        #[arg(long, value_enum, default_value = "json")]
        out: Output,
    },
    /// Run the invariant checks for all levels up to n-max.
    Selftest {
        #[arg(long, default_value_t = 120)]
        n_max: u64,
        #[arg(long, value_enum, default_value = "text")]
        out: Output,
    },
}

struct Failure {
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = EigenformCache::resolve(cli.cache_dir.as_deref());
    let start = Instant::now();
    let r = match &cli.command {
        Command::Decompose { level, prec, out } => cmd_decompose(&cache, *level, *prec, *out, &cli, start),
        Command::Eisenstein { level, prec, out } => cmd_eisenstein(*level, *prec, *out),
        Command::Space { level, sign, out } => cmd_space(&cache, *level, *sign, *out),
        Command::Certify { level, modular_degree, source, label, p_max, out } => {
            let args = CurveArgs { level: *level, modular_degree: *modular_degree, source, label, p_max: *p_max };
            cmd_certify(&cache, &args, *out, &cli, start)
        }
        Command::Scan { level, modular_degree, source, label, p_max, out } => {
            let args = CurveArgs { level: *level, modular_degree: *modular_degree, source, label, p_max: *p_max };
            cmd_scan(&cache, &args, *out)
        }
        Command::Selftest { n_max, out } => return cmd_selftest(*n_max, *out),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { error }) => {
            eprintln!("error: {error}");
            if error.is_user_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}

fn emit(command: &str, inputs: Value, body: Value, cli: &Cli, start: Instant) {
    let mut doc = report::document(command, inputs, body);
    if cli.timing {
        doc["timing_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    print!("{}", report::to_string(&doc));
}

fn newforms(cache: &EigenformCache, level: u64) -> Result<Vec<Eigenform>, Error> {
    cache.newforms(level).map(|(f, _)| f)
}

fn cmd_decompose(cache: &EigenformCache, n: u64, prec: Option<usize>, out: Output, cli: &Cli, start: Instant) -> CmdResult {
    check_level(n)?;
    let forms = newforms(cache, n)?;
    let d = decompose_with(n, &forms, prec)?;
    match out {
        Output::Json => emit("decompose", json!({ "level": n, "prec": prec }), report::decomposition(&d), cli, start),
        Output::Text => print_decomposition(&d),
    }
    Ok(())
}

fn print_decomposition(d: &DecompositionResult) {
    println!("level {}", d.level);
    println!("L(0,chi) = {}", d.l_value);
    println!("c = {}", d.eisenstein_coefficient);
    for c in &d.newforms {
        let field = if c.form.is_rational() { "Q".to_string() } else { c.form.field.minpoly().to_string() };
        println!("{:<6} {:<14} lambda = {}", c.form.label, field, c.lambda);
    }
    println!("solved with a_1..a_{}, residual zero through q^{}", d.solve_rows, d.residual_checked_to);
}

fn series_line(s: &rankin_core::QSeries) -> String {
    s.to_string()
}

fn cmd_eisenstein(n: u64, prec: usize, out: Output) -> CmdResult {
    check_level(n)?;
    let g = weight1_eisenstein(&quadratic_character(n)?, prec)?;
    let e = weight2_eisenstein(n, prec)?;
    match out {
        Output::Json => {
            let body = json!({ "weight1": report::eisenstein(&g), "weight2": report::eisenstein(&e) });
            print!("{}", report::to_string(&report::document("eisenstein", json!({ "level": n, "prec": prec }), body)));
        }
        Output::Text => {
            println!("G = {}", series_line(&g.expansion));
            println!("E = {}", series_line(&e.expansion));
        }
    }
    Ok(())
}

fn cmd_space(cache: &EigenformCache, n: u64, sign: SignArg, out: Output) -> CmdResult {
    let sign = match sign {
        SignArg::Plus => Sign::Plus,
        SignArg::Minus => Sign::Minus,
        SignArg::Zero => Sign::Zero,
    };
    let s = build_space(n, sign)?;
    let forms = if sign == Sign::Plus { newforms(cache, n)? } else { Vec::new() };
    match out {
        Output::Json => {
            let inputs = json!({ "level": n, "sign": sign.to_string() });
            print!("{}", report::to_string(&report::document("space", inputs, report::space(&s, &forms))));
        }
        Output::Text => {
            println!("level {n}, sign {sign}");
            println!("dimension {}, cuspidal {}", s.dimension(), s.cuspidal_dimension());
            for f in &forms {
                let a2 = f.eigenvalue(2).map(|a| a.to_string()).unwrap_or_default();
                println!("{:<6} {:<14} a_2 = {a2}", f.label, f.field.minpoly().to_string());
            }
        }
    }
    Ok(())
}

struct CurveArgs<'a> {
    level: u64,
    modular_degree: Option<u64>,
    source: &'a Option<String>,
    label: &'a Option<String>,
    p_max: u64,
}

impl CurveArgs<'_> {
    fn inputs(&self) -> Value {
        json!({
            "level": self.level,
            "modular_degree": self.modular_degree,
            "modular_degree_source": self.source,
            "label": self.label,
            "p_max": self.p_max,
        })
    }
}

struct CurveRun {
    decomposition: DecompositionResult,
    bounds: BoundReport,
    certificate: IwasawaCertificate,
}

fn run_curve(cache: &EigenformCache, a: &CurveArgs) -> Result<CurveRun, Error> {
    check_level(a.level)?;
    let forms = newforms(cache, a.level)?;
    let form = match a.label {
        Some(l) => forms.iter().find(|f| &f.label == l).ok_or_else(|| Error::Domain(format!("no newform labelled {l}")))?,
        None => forms.iter().find(|f| f.is_rational()).ok_or_else(|| Error::Domain("no elliptic-curve form at this level".into()))?,
    };
    if a.modular_degree.is_none() {
        eprintln!("warning: no --modular-degree given; denominator checks are skipped");
    }
    let mut curve = CurveInput::new(form.clone(), a.modular_degree)?;
    if let Some(s) = a.source {
        curve = curve.with_source(s.clone());
    }
    let d = decompose_with(a.level, &forms, None)?;
    let mut degrees = BTreeMap::new();
    if let Some(m) = a.modular_degree {
        degrees.insert(form.label.clone(), m);
    }
    let bounds = verify_bounds(&d, &degrees)?;
    let lambda = d
        .coefficient_of(&form.label)
        .and_then(|l| l.to_rational())
        .ok_or_else(|| Error::Internal(format!("no rational coefficient for {}", form.label)))?;
    let certificate = prime_scan(&curve, &lambda, a.p_max)?;
    Ok(CurveRun { decomposition: d, bounds, certificate })
}

fn cmd_certify(cache: &EigenformCache, a: &CurveArgs, out: Output, cli: &Cli, start: Instant) -> CmdResult {
    let r = run_curve(cache, a)?;
    match out {
        Output::Json => {
            let body = json!({
                "decomposition": report::decomposition(&r.decomposition),
                "bounds": report::bound_report(&r.bounds),
                "certificate": report::certificate(&r.certificate),
            });
            emit("certify", a.inputs(), body, cli, start);
        }
        Output::Text => {
            print_decomposition(&r.decomposition);
            print_bounds(&r.bounds);
            print_certificate(&r.certificate);
        }
    }
    Ok(())
}

fn cmd_scan(cache: &EigenformCache, a: &CurveArgs, out: Output) -> CmdResult {
    let r = run_curve(cache, a)?;
    match out {
        Output::Json => {
            let doc = report::document("scan", a.inputs(), report::certificate(&r.certificate));
            print!("{}", report::to_string(&doc));
        }
        Output::Text => print_certificate(&r.certificate),
    }
    Ok(())
}

fn yes(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn print_bounds(b: &BoundReport) {
    let r = &b.ramare_bound;
    println!(
        "envelope sqrt(N)(log N + 5)/(2 pi) in [{}, {}]",
        r.decimal(6, Direction::Lower),
        r.decimal(6, Direction::Upper)
    );
    println!("L(0,chi) below envelope: {}", yes(b.l_value_below_bound));
    println!("first coefficient identity: {}", yes(b.key_equality.passed()));
    println!("nonnegativity: {}", yes(b.nonnegativity_holds()));
    println!("size bound: {}", yes(b.size_bound_holds()));
    for f in &b.forms {
        let den = match &f.denominator {
            DenominatorCheck::Passed { m } => format!("pass (m = {m})"),
            DenominatorCheck::Failed => "FAIL".into(),
            DenominatorCheck::Skipped => "skipped (no modular degree)".into(),
            DenominatorCheck::NotRational => continue,
        };
        println!("denominator {}: {den}", f.label);
    }
}

fn print_certificate(c: &IwasawaCertificate) {
    match &c.theorem1_bound {
        Some(b) => println!(
            "bound 100 sqrt(N)(log N + 5) m_E in [{}, {}]",
            b.decimal(3, Direction::Lower),
            b.decimal(3, Direction::Upper)
        ),
        None => println!("bound unavailable without a modular degree"),
    }
    println!("{} lambda = {}", c.label, c.lambda);
    for v in &c.verdicts {
        let a = v.a_p.map(|a| a.to_string()).unwrap_or_else(|| "-".into());
        let verdict = match &v.conclusion {
            Conclusion::MuLambdaZero => format!("mu = lambda = 0 (surjectivity: {})", v.kato),
            Conclusion::Inconclusive(r) => {
                let r: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("inconclusive: {}", r.join(", "))
            }
        };
        println!("p = {:<4} a_p = {:<4} {:<18} {verdict}", v.p, a, v.reduction.to_string());
    }
}

fn cmd_selftest(n_max: u64, out: Output) -> ExitCode {
    let r = run_selftest(n_max);
    match out {
        Output::Json => {
            let checks: Vec<Value> = r
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "level": c.level, "passed": c.passed, "detail": c.detail }))
                .collect();
            let body = json!({ "passed": r.passed(), "checks": checks });
            print!("{}", report::to_string(&report::document("selftest", json!({ "n_max": n_max }), body)));
        }
        Output::Text => {
            for c in &r.checks {
                println!("{} {:<20} N={:<4} {}", yes(c.passed), c.name, c.level, c.detail);
            }
            let bad = r.failures().count();
            println!("{} checks, {bad} failed", r.checks.len());
        }
    }
    if r.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
