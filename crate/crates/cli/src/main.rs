//! `skein`: command-line front end for the skein engine.
//!
//! Every subcommand prints one JSON document on standard output. Exit codes:
//! 0 success, 1 usage, 2 parse or arity errors, 3 ring or form errors,
//! 4 selftest failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Value};

use skein_core::dsl::{self, DslError};
use skein_core::formats::{self, FormatError};
use skein_core::forms::{self, FormsError, DEFAULT_MAX_BLOCKS};
use skein_core::relations;
use skein_core::rep::{
    make_representation, make_representation_approx, rank_n_form, FormMatrix, RepError,
};
use skein_core::ring::{
    evaluate_poly, parse_rational, Conjugate, LaurentPoly, RingError, RingValue,
};
use skein_core::skein::{statesum_oracle, SkeinContext, SkeinError};
use skein_core::tangle::TangleWord;
use skein_core::unitary::{self, UnitaryError, DEFAULT_TOLERANCE};

#[derive(Parser)]
#[command(name = "skein", version, about = "Kauffman bracket skein engine")]
struct Cli {
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bracket polynomial of a link.
    Bracket {
        #[arg(short = 'e', long = "expr")]
        expr: String,
        /// Point of evaluation: A, p, p/q, a Gaussian rational or cis(t).
        #[arg(long)]
        at: Option<String>,
        /// Also run the state-sum oracle and report agreement.
        #[arg(long)]
        oracle: bool,
        /// Divide by (-A^3)^writhe.
        #[arg(long)]
        normalize_framing: bool,
    },
    /// Temperley-Lieb normal form of a tangle.
    Normalize {
        #[arg(short = 'e', long = "expr")]
        expr: String,
    },
    /// Matrix of a tangle under the representation of a form.
    Eval {
        #[arg(short = 'e', long = "expr")]
        expr: String,
        #[arg(long)]
        form: PathBuf,
        #[arg(long, default_value = "A")]
        at: String,
    },
    /// Canonical-block solver and form equivalence.
    Forms {
        #[command(subcommand)]
        command: FormsCommand,
    },
    /// Unitarity of the crossing and the norm bound.
    Unitary {
        #[command(subcommand)]
        command: UnitaryCommand,
    },
    /// Emit the bordered rank-n form as a form file.
    Repgen {
        #[arg(long)]
        rank: usize,
    },
    /// Run the relation suite and the oracle corpus.
    Selftest,
}

#[derive(Subcommand)]
enum FormsCommand {
    Solve {
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        #[arg(long, default_value_t = DEFAULT_MAX_BLOCKS)]
        max_blocks: usize,
    },
    Equiv {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
}

#[derive(Subcommand)]
enum UnitaryCommand {
    Check {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        at: String,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Parse(String),
    Ring(String),
    Selftest(Value),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Ring(_) => 3,
            CliError::Selftest(_) => 4,
        }
    }
}

impl From<DslError> for CliError {
    fn from(e: DslError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::Parse { .. } => CliError::Parse(e.to_string()),
            other => CliError::Ring(other.to_string()),
        }
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::ArityMismatch { .. } => CliError::Parse(e.to_string()),
            RepError::Ring(r) => r.into(),
            other => CliError::Ring(other.to_string()),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Json(_) | FormatError::Io(_) | FormatError::Shape(_) => {
                CliError::Parse(e.to_string())
            }
            FormatError::Ring(r) => r.into(),
            FormatError::Rep(r) => r.into(),
        }
    }
}

impl From<SkeinError> for CliError {
    fn from(e: SkeinError) -> Self {
        match e {
            SkeinError::Ring(r) => r.into(),
            SkeinError::TooManyCrossings(_) => CliError::Ring(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<FormsError> for CliError {
    fn from(e: FormsError) -> Self {
        match e {
            FormsError::Rep(r) => r.into(),
            other => CliError::Ring(other.to_string()),
        }
    }
}

impl From<UnitaryError> for CliError {
    fn from(e: UnitaryError) -> Self {
        match e {
            UnitaryError::Rep(r) => r.into(),
            UnitaryError::Ring(r) => r.into(),
            other => CliError::Ring(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let print = |v: &Value| {
        let text = if cli.pretty {
            serde_json::to_string_pretty(v)
        } else {
            serde_json::to_string(v)
        };
        println!("{}", text.expect("JSON values serialize"));
    };
    match run(cli.command) {
        Ok(v) => {
            print(&v);
            ExitCode::SUCCESS
        }
        Err(CliError::Selftest(report)) => {
            print(&report);
            ExitCode::from(4)
        }
        Err(e) => {
            let msg = match &e {
                CliError::Usage(m) | CliError::Parse(m) | CliError::Ring(m) => m.clone(),
                CliError::Selftest(_) => unreachable!(),
            };
            eprintln!("{}", json!({"error": msg, "code": e.code()}));
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<Value, CliError> {
    match command {
        Command::Bracket {
            expr,
            at,
            oracle,
            normalize_framing,
        } => bracket(&expr, at.as_deref(), oracle, normalize_framing),
        Command::Normalize { expr } => normalize(&expr),
        Command::Eval { expr, form, at } => eval(&expr, &form, &at),
        Command::Forms {
            command:
                FormsCommand::Solve {
                    rank,
                    delta,
                    max_blocks,
                },
        } => solve(rank, &delta, max_blocks),
        Command::Forms {
            command: FormsCommand::Equiv { left, right },
        } => {
            let (l, r) = (formats::load_form(&left)?, formats::load_form(&right)?);
            Ok(json!({"equivalent": forms::forms_equivalent(&l, &r)?}))
        }
        Command::Unitary {
            command:
                UnitaryCommand::Check {
                    form,
                    at,
                    tolerance,
                },
        } => unitary_check(&form, &at, tolerance),
        Command::Unitary {
            command: UnitaryCommand::Bound { n, theta },
        } => {
            if n < 2 {
                return Err(CliError::Usage(format!("--n must be at least 2, got {n}")));
            }
            let b = unitary::norm_bound_report(n, theta);
            Ok(json!({"n": n, "theta": theta, "lhs": b.lhs, "rhs": b.rhs, "feasible": b.feasible}))
        }
        Command::Repgen { rank } => {
            let form = FormMatrix::Laurent(rank_n_form(rank, &LaurentPoly::a())?);
            Ok(formats::form_to_json(&form))
        }
        Command::Selftest => selftest(),
    }
}

/// Parses a DSL expression; `@name` references resolve to built-in links.
fn parse_expr(expr: &str) -> Result<TangleWord, CliError> {
    Ok(dsl::parse_word(expr)?)
}

fn bracket(
    expr: &str,
    at: Option<&str>,
    oracle: bool,
    normalize_framing: bool,
) -> Result<Value, CliError> {
    let word = parse_expr(expr)?;
    let point = at.map(formats::parse_point).transpose()?;
    let mut poly = SkeinContext::<LaurentPoly>::symbolic().bracket(&word)?;
    let framed = |p: LaurentPoly| {
        if normalize_framing {
            relations::normalize_framing(&p, word.writhe())
        } else {
            p
        }
    };
    poly = framed(poly);
    let render = |p: &LaurentPoly| -> Result<Value, CliError> {
        Ok(match &point {
            None => p.to_json(),
            Some(a) => formats::value_to_json(&evaluate_poly(p, a)?),
        })
    };
    let mut out = serde_json::Map::new();
    out.insert("bracket".into(), render(&poly)?);
    if normalize_framing {
        out.insert("writhe".into(), json!(word.writhe()));
    }
    if oracle {
        let o = framed(statesum_oracle(&word)?);
        out.insert("oracle".into(), render(&o)?);
        out.insert("agreement".into(), json!(o == poly));
    }
    Ok(Value::Object(out))
}

fn normalize(expr: &str) -> Result<Value, CliError> {
    let word = parse_expr(expr)?;
    let tl = SkeinContext::<LaurentPoly>::symbolic().expand_word(&word);
    Ok(formats::tl_to_json(&tl))
}

fn eval(expr: &str, form_path: &std::path::Path, at: &str) -> Result<Value, CliError> {
    let word = parse_expr(expr)?;
    let form = formats::load_form(form_path)?;
    let point = formats::parse_point(at)?;
    let matrix = match (&point, form.specialize_or_complex(&point)?) {
        (RingValue::Laurent(a), Specialized::Laurent(m)) => {
            let rep = make_representation(m, a.clone())?;
            formats::matrix_to_json(&rep.evaluate_word(&word), |x| RingValue::Laurent(x.clone()))
        }
        (RingValue::Rational(a), Specialized::Rational(m)) => {
            let rep = make_representation(m, a.clone())?;
            formats::matrix_to_json(&rep.evaluate_word(&word), |x| {
                RingValue::Rational(x.clone())
            })
        }
        (RingValue::Gaussian(a), Specialized::Gaussian(m)) => {
            let rep = make_representation(m, a.clone())?;
            formats::matrix_to_json(&rep.evaluate_word(&word), |x| {
                RingValue::Gaussian(x.clone())
            })
        }
        (RingValue::Complex(a), Specialized::Complex(m)) => {
            let rep = make_representation_approx(m, *a, 1e-9)?;
            formats::matrix_to_json(&rep.evaluate_word(&word), |x| RingValue::Complex(*x))
        }
        _ => unreachable!("specialization follows the point"),
    };
    Ok(
        json!({"source": word.source(), "target": word.target(), "ring": point.tag().to_string(), "matrix": matrix}),
    )
}

enum Specialized {
    Laurent(skein_core::Matrix<LaurentPoly>),
    Rational(skein_core::Matrix<BigRational>),
    Gaussian(skein_core::Matrix<skein_core::GaussianRational>),
    Complex(skein_core::Matrix<Complex64>),
}

trait SpecializeExt {
    fn specialize_or_complex(&self, a: &RingValue) -> Result<Specialized, CliError>;
}

impl SpecializeExt for FormMatrix {
    fn specialize_or_complex(&self, a: &RingValue) -> Result<Specialized, CliError> {
        if let RingValue::Complex(z) = a {
            return Ok(Specialized::Complex(unitary::complex_form(self, *z)?));
        }
        Ok(match self.specialize(a)? {
            FormMatrix::Laurent(m) => Specialized::Laurent(m),
            FormMatrix::Rational(m) => Specialized::Rational(m),
            FormMatrix::Gaussian(m) => Specialized::Gaussian(m),
        })
    }
}

fn solve(rank: usize, delta: &str, max_blocks: usize) -> Result<Value, CliError> {
    if rank == 0 {
        return Err(CliError::Usage("--rank must be at least 1".into()));
    }
    let delta = parse_rational(delta)?;
    let solutions: Vec<Value> = forms::solve_blocks(rank, &delta, max_blocks)
        .iter()
        .map(forms::BlockSolution::to_json)
        .collect();
    Ok(json!({"rank": rank, "delta": delta.to_string(), "solutions": solutions}))
}

fn unitary_check(form_path: &std::path::Path, at: &str, tolerance: f64) -> Result<Value, CliError> {
    let form = formats::load_form(form_path)?;
    let point = formats::parse_point(at)?;
    let z = match &point {
        RingValue::Laurent(_) => return Err(UnitaryError::UnsupportedRing(point.tag()).into()),
        RingValue::Rational(q) => skein_core::GaussianRational::real(q.clone()).to_complex(),
        RingValue::Gaussian(g) => g.to_complex(),
        RingValue::Complex(z) => *z,
    };
    let is_unitary = unitary::is_unitary(&form, &point, tolerance)?;
    let bound = unitary::norm_bound_report(form.rank(), z.arg());
    Ok(json!({
        "n": form.rank(),
        "A": formats::value_to_json(&point),
        "unitary": is_unitary,
        "bound": {"lhs": bound.lhs, "rhs": bound.rhs},
    }))
}

fn selftest() -> Result<Value, CliError> {
    let suite = relations::relation_suite();
    let passed = suite.iter().filter(|r| r.holds).count();
    let checks: Vec<Value> = suite
        .iter()
        .map(|r| json!({"name": r.name, "holds": r.holds}))
        .collect();
    let oracle = relations::oracle_corpus(2024, 200, 8, 6);
    let ok = passed == suite.len() && oracle.agreed == oracle.checked;
    let report = json!({
        "relations": {"passed": passed, "failed": suite.len() - passed, "checks": checks},
        "oracle": {"checked": oracle.checked, "agreed": oracle.agreed},
        "passed": ok,
    });
    if ok {
        Ok(report)
    } else {
        Err(CliError::Selftest(report))
    }
}
