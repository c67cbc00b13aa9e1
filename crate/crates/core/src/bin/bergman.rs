use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bergman::algebra::rational;
use bergman::classify::{classify, refusal_json, DEFAULT_VERIFIED_DEGREE};
use bergman::diffop::{symmetry_check, DEFAULT_SYMMETRY_DEGREE};
use bergman::euler::{euler_apply, euler_bounds, euler_inverse};
use bergman::expr::{parse_first_order, parse_polynomial};
use bergman::lie::{basis_operator, Algebra, BasisElement};
use bergman::metric::{mono_ip, normalized_ip, numeric_ip_oracle, BergmanSpace};
use bergman::selftest::run_selftest;
use bergman::{Error, MultiIndex, Polynomial, Rational};

#[derive(Parser)]
#[command(name = "bergman", version, about = "Exact first-order operator calculus on weighted Bergman spaces")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainArg {
    Ball,
    Mball,
}

#[derive(Args)]
struct SpaceArgs {
    #[arg(long, value_enum)]
    domain: DomainArg,
    /// Ball dimension (ignored for mball).
    #[arg(long = "N", id = "N")]
    dim: Option<usize>,
    /// Weight as an exact rational `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    xi: String,
}

#[derive(Subcommand)]
enum Command {
    /// Exact inner product of two monomials.
    Innerprod {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        n: String,
        #[arg(long)]
        m: String,
        /// Divide by the squared norm of the constant 1.
        #[arg(long)]
        normalized: bool,
    },
    /// Symmetry of an operator on monomials up to a degree.
    Symcheck {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, default_value_t = DEFAULT_SYMMETRY_DEGREE)]
        degree: u32,
        #[arg(long, allow_hyphen_values = true)]
        op: String,
    },
    /// Writes a symmetric operator as c + i*pi(Y).
    Classify {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        #[arg(long, default_value_t = DEFAULT_VERIFIED_DEGREE)]
        degree: u32,
    },
    /// The operator of a basis element.
    Pi {
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long)]
        element: String,
    },
    /// The shifted Euler operator on the ball.
    Euler {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, group = "action")]
        bounds: bool,
        #[arg(long, group = "action", allow_hyphen_values = true)]
        apply: Option<String>,
        #[arg(long, group = "action", allow_hyphen_values = true)]
        invert: Option<String>,
    },
    /// Monte-Carlo estimate of a monomial inner product.
    Oracle {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        n: String,
        #[arg(long)]
        m: String,
        #[arg(long, default_value_t = 200_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Runs the built-in invariant suites.
    Selftest {
        #[arg(long)]
        quick: bool,
    },
}

/// Printed result: JSON document and its text rendering.
struct Report {
    json: Value,
    text: String,
    exit: u8,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Self { json, text, exit: 0 }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::OrderTooHigh(_) => 2,
        Error::RelationsViolated(_) => 4,
        Error::Invariant(_) => 5,
        _ => 3,
    }
}

fn parse_rational(text: &str, what: &str) -> Result<Rational, Error> {
    rational::parse(text).map_err(|_| Error::InvalidParameter(format!("{what} must be an exact rational p/q, got '{text}'")))
}

fn build_space(args: &SpaceArgs) -> Result<BergmanSpace, Error> {
    let xi = parse_rational(&args.xi, "xi")?;
    match args.domain {
        DomainArg::Ball => {
            let n = args.dim.ok_or_else(|| Error::InvalidParameter("--N is required for the ball".into()))?;
            BergmanSpace::ball(n, xi)
        }
        DomainArg::Mball => BergmanSpace::matrix_ball(xi),
    }
}

fn parse_index(text: &str, dim: usize) -> Result<MultiIndex, Error> {
    let entries = text
        .split(',')
        .map(|t| t.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Error::InvalidParameter(format!("bad multi-index '{text}': {e}")))?;
    if entries.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: entries.len() });
    }
    Ok(MultiIndex::new(entries))
}

fn space_json(space: &BergmanSpace) -> Value {
    json!({ "domain": space.domain().to_string(), "xi": rational::format(space.xi()) })
}

fn innerprod(space: &SpaceArgs, n: &str, m: &str, normalized: bool) -> Result<Report, Error> {
    let s = build_space(space)?;
    let (n, m) = (parse_index(n, s.dim())?, parse_index(m, s.dim())?);
    let mut json = space_json(&s);
    json["n"] = json!(n);
    json["m"] = json!(m);
    json["normalized"] = json!(normalized);
    let value = if normalized {
        let p = Polynomial::monomial(n, bergman::ComplexRational::one());
        let q = Polynomial::monomial(m, bergman::ComplexRational::one());
        let v = normalized_ip(&s, &p, &q)?;
        json["unit"] = json!("1");
        v.to_string()
    } else {
        let v = mono_ip(&s, &n, &m)?;
        json["unit"] = json!(v.unit.as_str());
        v.to_string()
    };
    json["value"] = json!(value);
    Ok(Report::ok(json, value))
}

fn symcheck(space: &SpaceArgs, degree: u32, op: &str) -> Result<Report, Error> {
    let s = build_space(space)?;
    let l = parse_first_order(op, s.dim())?;
    let report = symmetry_check(&s, &l, degree)?;
    let mut json = serde_json::to_value(&report).map_err(|e| Error::Invariant(e.to_string()))?;
    json["operator"] = json!(l.to_string());
    let mut text = format!("operator: {l}\nsymmetric: {} (degree {degree})", report.symmetric);
    for w in report.witnesses.iter().take(5) {
        text.push_str(&format!("\n  <L z^{}, z^{}> = {}  vs  <z^{}, L z^{}> = {}", w.n, w.m, w.lhs, w.n, w.m, w.rhs));
    }
    if report.witnesses.len() > 5 {
        text.push_str(&format!("\n  ... {} witnesses in total", report.witnesses.len()));
    }
    Ok(Report::ok(json, text))
}

fn classify_cmd(space: &SpaceArgs, op: &str, degree: u32) -> Result<Report, Error> {
    let s = build_space(space)?;
    let l = parse_first_order(op, s.dim())?;
    match classify(&s, &l, degree) {
        Ok(r) => {
            let json = serde_json::to_value(&r).map_err(|e| Error::Invariant(e.to_string()))?;
            let terms: Vec<String> = bergman::lie::basis_elements(r.y.algebra)
                .iter()
                .zip(&r.basis_coefficients)
                .filter(|(_, a)| !num_traits::Zero::is_zero(*a))
                .map(|(t, a)| format!("({})*{t}", rational::format(a)))
                .collect();
            let y = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            let mut text = format!("operator: {l}\nc = {}\nY = {y}", rational::format(&r.c));
            if let Some(o) = &r.offset_check {
                if !o.agrees {
                    text.push_str(&format!(
                        "\nnote: a_0^0 + 3(a1 + a2) = {} differs from c",
                        rational::format(&o.closed_form)
                    ));
                }
            }
            Ok(Report::ok(json, text))
        }
        Err(Error::RelationsViolated(report)) => {
            let text = format!("operator: {l}\nnot symmetric:\n  {}", report.violated.join("\n  "));
            Ok(Report { json: refusal_json(&report), text, exit: 4 })
        }
        Err(e) => Err(e),
    }
}

fn pi_cmd(algebra: &str, xi: &str, element: &str) -> Result<Report, Error> {
    let algebra: Algebra = algebra.parse()?;
    let element: BasisElement = element.parse()?;
    let s = BergmanSpace::new(algebra.domain(), parse_rational(xi, "xi")?)?;
    let l = basis_operator(&s, element)?;
    let json = json!({
        "algebra": algebra.to_string(),
        "element": element.to_string(),
        "xi": rational::format(s.xi()),
        "operator": l,
        "pretty": l.to_string(),
    });
    Ok(Report::ok(json, format!("pi({element}) = {l}")))
}

fn euler_cmd(
    n: usize,
    xi: &str,
    c: &str,
    apply: Option<&str>,
    invert: Option<&str>,
) -> Result<Report, Error> {
    let xi = parse_rational(xi, "xi")?;
    let c = parse_rational(c, "c")?;
    let poly = |p: Polynomial| -> Report {
        let pretty = p.to_string();
        Report::ok(json!({ "polynomial": p, "pretty": pretty }), pretty)
    };
    if let Some(text) = apply {
        BergmanSpace::ball(n, xi)?;
        let p = parse_polynomial(text, n)?;
        return Ok(poly(euler_apply(&p, &c)));
    }
    if let Some(text) = invert {
        BergmanSpace::ball(n, xi)?;
        let p = parse_polynomial(text, n)?;
        return Ok(poly(euler_inverse(&p, &c)?));
    }
    let b = euler_bounds(n, &xi, &c)?;
    let at = |k: Option<u64>| k.map_or("limit k -> infinity".to_string(), |k| format!("attained at k = {k}"));
    let text = format!(
        "inf r(k) = {} ({})\nsup r(k) = {} ({})",
        rational::format(&b.inf_ratio),
        at(b.inf_attained_at),
        rational::format(&b.sup_ratio),
        at(b.sup_attained_at)
    );
    let json = serde_json::to_value(&b).map_err(|e| Error::Invariant(e.to_string()))?;
    Ok(Report::ok(json, text))
}

fn oracle_cmd(space: &SpaceArgs, n: &str, m: &str, samples: u64, seed: u64) -> Result<Report, Error> {
    let s = build_space(space)?;
    let (n, m) = (parse_index(n, s.dim())?, parse_index(m, s.dim())?);
    let est = numeric_ip_oracle(&s, &n, &m, samples, seed)?;
    let exact = mono_ip(&s, &n, &m)?;
    let agrees = est.agrees_with_exact(&exact, 3.0);
    let mut json = serde_json::to_value(&est).map_err(|e| Error::Invariant(e.to_string()))?;
    json["exact"] = json!(exact.to_string());
    json["within_3_stderr"] = json!(agrees);
    let text = format!(
        "estimate = {:.6} + {:.6}i  (stderr {:.2e}, {} samples, seed {})\nexact = {exact}  within 3 stderr: {agrees}",
        est.estimate_re, est.estimate_im, est.stderr, est.samples, est.seed
    );
    Ok(Report::ok(json, text))
}

fn selftest_cmd(quick: bool) -> Result<Report, Error> {
    let report = run_selftest(quick);
    let text = report
        .suites
        .iter()
        .map(|s| format!("{} {}: {}", if s.passed { "PASS" } else { "FAIL" }, s.name, s.detail))
        .collect::<Vec<_>>()
        .join("\n");
    let json = serde_json::to_value(&report).map_err(|e| Error::Invariant(e.to_string()))?;
    Ok(Report { json, text, exit: if report.passed { 0 } else { 5 } })
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Innerprod { space, n, m, normalized } => innerprod(space, n, m, *normalized),
        Command::Symcheck { space, degree, op } => symcheck(space, *degree, op),
        Command::Classify { space, op, degree } => classify_cmd(space, op, *degree),
        Command::Pi { algebra, xi, element } => pi_cmd(algebra, xi, element),
        Command::Euler { n, xi, c, bounds: _, apply, invert } => {
            euler_cmd(*n, xi, c, apply.as_deref(), invert.as_deref())
        }
        Command::Oracle { space, n, m, samples, seed } => oracle_cmd(space, n, m, *samples, *seed),
        Command::Selftest { quick } => selftest_cmd(*quick),
    }
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.output {
                Output::Json => emit(&serde_json::to_string_pretty(&report.json).expect("serializable")),
                Output::Text => emit(&report.text),
            }
            ExitCode::from(report.exit)
        }
        Err(e) => {
            let code = exit_code(&e);
            match cli.output {
                Output::Json => emit(&json!({ "error": e.to_string(), "exit_code": code }).to_string()),
                Output::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(code)
        }
    }
}
