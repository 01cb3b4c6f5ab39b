//! The `lattes` command line: argument model, dispatch and report rendering.

pub mod syntax;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use lattes_core::dynamics::{decide_diagonal, verify_pair_ring, Level, Outcome, SymbolicVerifier, Verdict};
use lattes_core::ecurve::{orbit_detect, Curve, Orbit};
use lattes_core::endo::{endo_from_quadint, lattes};
use lattes_core::{DegreeBudget, Error as CoreError, KNum, QuadInt, RingId};

use syntax::{parse_knum, parse_point, parse_quadint, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "lattes",
    version,
    about = "Exact CM endomorphisms, Lattès maps and diagonal pre-periodicity"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide pre-periodicity of the diagonal under ([ω], [ω']) on E×E and P¹×P¹
    Decide(PairArgs),
    /// Print the Lattès map of [ω]
    Lattes(ElementArgs),
    /// Print [ω] as (x, y) ↦ (X(x), y·Y(x))
    Endo(ElementArgs),
    /// Check a period k by ring arithmetic and/or symbolic composition
    Verify(VerifyArgs),
    /// Follow the orbit of a point under [ω]
    Orbit(OrbitArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Ring,
    Symbolic,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Confirmed,
    Refuted,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// gaussian (y² = x³ + Ax) or eisenstein (y² = x³ + B)
    #[arg(long)]
    pub ring: RingId,
    /// Coefficient A of a gaussian curve (default 1)
    #[arg(long = "A", allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Coefficient B of an eisenstein curve (default 1)
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, default_value_t = DegreeBudget::DEFAULT.0)]
    pub degree_budget: usize,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ElementArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: String,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: String,
    #[arg(long = "omega-prime", allow_hyphen_values = true)]
    pub omega_prime: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long)]
    pub k: u32,
    /// Extra iterations of ω applied before comparing (symbolic only)
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    /// Check one level only; both by default
    #[arg(long)]
    pub level: Option<Level>,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
    /// Exit with status 1 if any result differs
    #[arg(long, value_enum)]
    pub expect: Option<Expect>,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[command(flatten)]
    pub element: ElementArgs,
    /// `inf` or `x,y`
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
    #[arg(long, default_value_t = 64)]
    pub max_steps: usize,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::DegreeBudgetExceeded { .. })
            | CliError::Parse(ParseError::Core(CoreError::DegreeBudgetExceeded { .. })) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        }
    }
}

type Res<T> = std::result::Result<T, CliError>;

/// A finished report: JSON record, human lines and exit status.
struct Report {
    json: Value,
    human: Vec<String>,
    code: i32,
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            code
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (format, result) = match &cli.command {
        Command::Decide(a) => (a.curve.format, decide(a)),
        Command::Lattes(a) => (a.curve.format, lattes_cmd(a)),
        Command::Endo(a) => (a.curve.format, endo_cmd(a)),
        Command::Verify(a) => (a.pair.curve.format, verify(a)),
        Command::Orbit(a) => (a.element.curve.format, orbit(a)),
    };
    match result {
        Ok(report) => {
            let written = match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("serialisable")
                ),
                Format::Human => report.human.iter().try_for_each(|l| writeln!(out, "{l}")),
            };
            if written.is_err() {
                return EXIT_USAGE;
            }
            report.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn build_curve(args: &CurveArgs) -> Res<Curve> {
    let ring = args.ring;
    let coeff = |s: &Option<String>| -> Res<Option<KNum>> {
        s.as_deref()
            .map(|s| parse_knum(ring, s))
            .transpose()
            .map_err(Into::into)
    };
    let (a, b) = (coeff(&args.a)?, coeff(&args.b)?);
    let curve = match ring {
        RingId::Gaussian => {
            if b.is_some() {
                return Err(CliError::Usage("--B applies to eisenstein curves only".into()));
            }
            Curve::gaussian(a.unwrap_or_else(|| KNum::one(ring)))
        }
        RingId::Eisenstein => {
            if a.is_some() {
                return Err(CliError::Usage("--A applies to gaussian curves only".into()));
            }
            Curve::eisenstein(b.unwrap_or_else(|| KNum::one(ring)))
        }
    };
    Ok(curve?)
}

fn curve_request(args: &CurveArgs, c: &Curve) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("ring".into(), json!(args.ring.to_string()));
    m.insert("curve".into(), json!(c.to_string()));
    m.insert("degree_budget".into(), json!(args.degree_budget));
    m
}

fn parse_pair(args: &PairArgs) -> Res<(QuadInt, QuadInt)> {
    let ring = args.curve.ring;
    Ok((
        parse_quadint(ring, &args.omega)?,
        parse_quadint(ring, &args.omega_prime)?,
    ))
}

fn pair_request(sub: &str, args: &PairArgs, c: &Curve, w: &QuadInt, w2: &QuadInt) -> serde_json::Map<String, Value> {
    let mut m = curve_request(&args.curve, c);
    m.insert("subcommand".into(), json!(sub));
    m.insert("omega".into(), json!(w.to_string()));
    m.insert("omega_prime".into(), json!(w2.to_string()));
    m
}

#[derive(Debug, Clone)]
struct Check {
    level: Level,
    k: u32,
    method: &'static str,
    result: Outcome,
}

impl Check {
    fn json(&self) -> Value {
        json!({"level": self.level.to_string(), "k": self.k, "method": self.method, "result": self.result.to_string()})
    }

    fn human(&self) -> String {
        format!("verify {} k={} {}: {}", self.level, self.k, self.method, self.result)
    }
}

fn level_json(v: &Verdict, level: Level) -> Value {
    let lv = v.level(level);
    json!({"preperiodic": lv.preperiodic, "k": lv.minimal_k})
}

fn verdict_lines(v: &Verdict) -> Vec<String> {
    let mut lines = vec![format!("quotient: {}", v.quotient)];
    for (level, name) in [(Level::EE, "E x E"), (Level::P1, "P1 x P1")] {
        lines.push(match v.level(level).pair() {
            Some(p) => format!("{name}: pre-periodic, minimal pair ({},{})", p.n, p.k),
            None => format!("{name}: not pre-periodic"),
        });
    }
    lines.push(format!("note: {}", v.note));
    lines
}

fn degree_of(w: &QuadInt, k: u32) -> u128 {
    let n: u128 = w.norm().try_into().unwrap_or(u128::MAX);
    n.saturating_pow(k)
}

/// Symbolic checks at one level for each `k` in `ks`, on its own verifier.
fn symbolic_checks(
    c: &Curve,
    budget: DegreeBudget,
    level: Level,
    w: &QuadInt,
    w2: &QuadInt,
    ks: &[u32],
    n: u32,
) -> Res<Vec<Check>> {
    let mut v = SymbolicVerifier::new(c.clone(), budget);
    ks.iter()
        .map(|&k| {
            let result = if n == 0 {
                v.verify(level, w, w2, k)?
            } else {
                v.verify_after(level, w, w2, k, n)?
            };
            Ok(Check {
                level,
                k,
                method: "symbolic",
                result,
            })
        })
        .collect()
}

/// EE and P1 symbolic checks run on separate threads.
fn symbolic_both(
    c: &Curve,
    budget: DegreeBudget,
    plan: &[(Level, Vec<u32>)],
    w: &QuadInt,
    w2: &QuadInt,
    n: u32,
) -> Res<Vec<Vec<Check>>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = plan
            .iter()
            .map(|(level, ks)| s.spawn(move || symbolic_checks(c, budget, *level, w, w2, ks, n)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    })
}

fn decide(args: &PairArgs) -> Res<Report> {
    let c = build_curve(&args.curve)?;
    let (w, w2) = parse_pair(args)?;
    let budget = DegreeBudget(args.curve.degree_budget);
    let v = decide_diagonal(&w, &w2)?;

    // ring checks at every divisor of the minimal k; symbolic ones too when
    // the composite degree fits the budget
    let mut plan = Vec::new();
    for level in Level::ALL {
        let ks: Vec<u32> = match v.level(level).minimal_k {
            Some(k) => (1..=k).filter(|d| k % d == 0).collect(),
            None => Vec::new(),
        };
        plan.push((level, ks));
    }
    let symbolic_plan: Vec<(Level, Vec<u32>)> = plan
        .iter()
        .map(|(l, ks)| {
            let fits = ks
                .iter()
                .copied()
                .filter(|&k| budget.check(degree_of(&w, k).max(degree_of(&w2, k))).is_ok());
            (*l, fits.collect())
        })
        .collect();
    let symbolic = symbolic_both(&c, budget, &symbolic_plan, &w, &w2, 0)?;

    let mut checks = Vec::new();
    for ((level, ks), sym) in plan.iter().zip(&symbolic) {
        for &k in ks {
            checks.push(Check {
                level: *level,
                k,
                method: "ring",
                result: verify_pair_ring(*level, &w, &w2, k)?,
            });
            checks.extend(sym.iter().filter(|s| s.k == k).cloned());
        }
    }

    let json = json!({
        "request": pair_request("decide", args, &c, &w, &w2),
        "quotient": v.quotient.to_string(),
        "ee": level_json(&v, Level::EE),
        "p1": level_json(&v, Level::P1),
        "verifications": checks.iter().map(Check::json).collect::<Vec<_>>(),
    });
    let mut human = vec![format!("curve: {c}"), format!("omega = {w}, omega' = {w2}")];
    human.extend(verdict_lines(&v));
    human.extend(checks.iter().map(Check::human));
    Ok(Report {
        json,
        human,
        code: EXIT_OK,
    })
}

fn verify(args: &VerifyArgs) -> Res<Report> {
    let pair = &args.pair;
    let c = build_curve(&pair.curve)?;
    let (w, w2) = parse_pair(pair)?;
    let budget = DegreeBudget(pair.curve.degree_budget);
    if args.k == 0 {
        return Err(CliError::Usage("--k must be positive".into()));
    }
    let levels: Vec<Level> = args.level.map_or(Level::ALL.to_vec(), |l| vec![l]);
    let v = decide_diagonal(&w, &w2)?;

    let mut checks = Vec::new();
    if args.method != Method::Symbolic {
        for &level in &levels {
            checks.push(Check {
                level,
                k: args.k,
                method: "ring",
                result: verify_pair_ring(level, &w, &w2, args.k)?,
            });
        }
    }
    if args.method != Method::Ring {
        let plan: Vec<_> = levels.iter().map(|&l| (l, vec![args.k])).collect();
        for group in symbolic_both(&c, budget, &plan, &w, &w2, args.n)? {
            checks.extend(group);
        }
    }
    checks.sort_by_key(|ch| (ch.level, ch.method != "ring"));

    let code = match args.expect {
        Some(Expect::Confirmed) if checks.iter().any(|ch| ch.result != Outcome::Confirmed) => EXIT_REFUTED,
        Some(Expect::Refuted) if checks.iter().any(|ch| ch.result != Outcome::Refuted) => EXIT_REFUTED,
        _ => EXIT_OK,
    };
    let mut request = pair_request("verify", pair, &c, &w, &w2);
    request.insert("k".into(), json!(args.k));
    request.insert("n".into(), json!(args.n));
    let json = json!({
        "request": request,
        "quotient": v.quotient.to_string(),
        "ee": level_json(&v, Level::EE),
        "p1": level_json(&v, Level::P1),
        "verifications": checks.iter().map(Check::json).collect::<Vec<_>>(),
    });
    let mut human: Vec<String> = checks.iter().map(Check::human).collect();
    if code == EXIT_REFUTED {
        human.push("expectation not met".into());
    }
    Ok(Report { json, human, code })
}

fn element_setup(args: &ElementArgs) -> Res<(Curve, QuadInt, DegreeBudget)> {
    let c = build_curve(&args.curve)?;
    let w = parse_quadint(args.curve.ring, &args.omega)?;
    Ok((c, w, DegreeBudget(args.curve.degree_budget)))
}

fn element_request(sub: &str, args: &ElementArgs, c: &Curve, w: &QuadInt) -> serde_json::Map<String, Value> {
    let mut m = curve_request(&args.curve, c);
    m.insert("subcommand".into(), json!(sub));
    m.insert("omega".into(), json!(w.to_string()));
    m
}

fn lattes_cmd(args: &ElementArgs) -> Res<Report> {
    let (c, w, budget) = element_setup(args)?;
    let l = lattes(&c, &w, budget)?;
    let json = json!({
        "request": element_request("lattes", args, &c, &w),
        "map": l.to_string(),
        "degree": l.degree(),
    });
    Ok(Report {
        json,
        human: vec![l.to_string()],
        code: EXIT_OK,
    })
}

fn endo_cmd(args: &ElementArgs) -> Res<Report> {
    let (c, w, budget) = element_setup(args)?;
    let e = endo_from_quadint(&c, &w, budget)?;
    let request = element_request("endo", args, &c, &w);
    let (json, human) = match (e.x_map(), e.y_map()) {
        (Some(x), Some(y)) => (
            json!({"request": request, "x": x.to_string(), "y": y.to_string(), "degree": e.degree()}),
            vec![format!("X = {x}"), format!("Y = {y}")],
        ),
        _ => (
            json!({"request": request, "x": Value::Null, "y": Value::Null, "degree": 0}),
            vec!["zero map".to_string()],
        ),
    };
    Ok(Report {
        json,
        human,
        code: EXIT_OK,
    })
}

fn orbit(args: &OrbitArgs) -> Res<Report> {
    let (c, w, budget) = element_setup(&args.element)?;
    let p = parse_point(args.element.curve.ring, &args.point)?;
    let phi = endo_from_quadint(&c, &w, budget)?;
    let result = orbit_detect(&c, &phi, &p, args.max_steps)?;
    let mut request = element_request("orbit", &args.element, &c, &w);
    request.insert("point".into(), json!(p.to_string()));
    request.insert("max_steps".into(), json!(args.max_steps));
    let (orbit, line) = match result {
        Orbit::Preperiodic(pair) => (
            json!({"status": "preperiodic", "n": pair.n, "k": pair.k}),
            format!("pre-periodic with pair ({},{})", pair.n, pair.k),
        ),
        Orbit::Exhausted(steps) => (
            json!({"status": "exhausted", "steps": steps}),
            format!("no repetition within {steps} steps"),
        ),
    };
    Ok(Report {
        json: json!({"request": request, "orbit": orbit}),
        human: vec![line],
        code: EXIT_OK,
    })
}
