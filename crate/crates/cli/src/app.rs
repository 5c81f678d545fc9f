use std::fmt::Display;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use sl3_core::bigon_split::split_annulus;
use sl3_core::coeff::{specialize, Coeff, CoeffError, Generic, RootOfUnity};
use sl3_core::frobenius::{verify_suite, CheckId, VerifyOptions};
use sl3_core::powersum::{power_sum_poly, power_sum_oracle};
use sl3_core::qmatrix::{AlgebraError, Engine};
use sl3_core::webs::{
    eval_threaded_unknot, evaluate_closed_tensor, evaluate_closed_with, thread_core, FaceStrategy, WebDiagram,
    WebError, DEFAULT_WEB_FUEL,
};
use sl3_core::{CyclotomicZ, LaurentZ};

use crate::expr::{parse_annulus, parse_expression, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "sl3", version, about = "Exact computations in the SL3 quantum group, webs and skein algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Output {
    /// Print a JSON document instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify the root-of-unity identities at order N.
    Verify {
        #[arg(long = "N")]
        n: u32,
        /// `all`, or check letters such as `a`, `ace`, `a,c`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Include the two-cut annulus check.
        #[arg(long)]
        deep: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Print the power-sum polynomial of degree N in e1, e2.
    Powersum {
        #[arg(long = "N")]
        n: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Normal form of an expression in the generators X11..X33.
    NormalForm {
        expression: String,
        /// Work at a primitive root of unity of this order.
        #[arg(long = "N")]
        n: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// Evaluate a closed web document.
    EvalWeb {
        file: PathBuf,
        /// Also reduce the value at a root of unity of this order.
        #[arg(long = "N")]
        n: Option<u32>,
        #[arg(long, value_enum, default_value_t = Evaluator::Faces)]
        evaluator: Evaluator,
        /// Visit reducible faces in a seeded random order.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Thread the annulus core by the power sum of degree N.
    Thread {
        #[arg(long = "N")]
        n: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Split an annulus element along k cuts.
    Split {
        #[arg(long)]
        cuts: usize,
        /// Polynomial in l+ and l-.
        #[arg(long)]
        element: String,
        #[arg(long = "N")]
        n: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evaluator {
    /// Local face rewriting.
    Faces,
    /// State-sum contraction.
    Tensor,
    /// Both, failing if they disagree.
    Both,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Web(WebError),
    #[error("computation failed: {0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io { .. } | CliError::Coeff(_) => EXIT_USAGE,
            CliError::Web(WebError::Json(_) | WebError::Invalid(_)) => EXIT_USAGE,
            CliError::Web(_) | CliError::Compute(_) => EXIT_FAILURE,
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<WebError> for CliError {
    fn from(e: WebError) -> Self {
        CliError::Web(e)
    }
}

/// What a command printed and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: EXIT_OK }
    }
}

fn render(out: Output, schema: &str, mut fields: Value, text: impl Display) -> String {
    if out.json {
        fields["schema"] = json!(schema);
        serde_json::to_string_pretty(&fields).expect("json value")
    } else {
        text.to_string()
    }
}

fn root(n: u32) -> Result<RootOfUnity, CliError> {
    Ok(RootOfUnity::new(n)?)
}

fn parse_suite(letters: &str) -> Result<Vec<CheckId>, CliError> {
    if letters == "all" {
        return Ok(CheckId::ALL.to_vec());
    }
    let mut out = Vec::new();
    for c in letters.chars().filter(|c| *c != ',') {
        out.push(CheckId::from_letter(c).ok_or_else(|| CliError::Usage(format!("unknown check '{c}' in --suite")))?);
    }
    if out.is_empty() {
        return Err(CliError::Usage("empty --suite".into()));
    }
    Ok(out)
}

pub fn dispatch(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Verify { n, suite, deep, out } => {
            let options = VerifyOptions { checks: parse_suite(suite)?, two_cuts: *deep };
            root(*n)?;
            let report = verify_suite(*n, &options).map_err(|e| CliError::Usage(e.to_string()))?;
            let stdout = if out.json {
                report.to_json()
            } else {
                let mut lines: Vec<String> = report
                    .checks
                    .iter()
                    .map(|c| {
                        let mut line = format!(
                            "({}) {:<20} {} residual={} {}ms",
                            c.label,
                            c.id.to_string(),
                            c.status,
                            c.residual_terms,
                            c.wall_ms
                        );
                        if let Some(d) = &c.detail {
                            line.push_str(&format!(" [{d}]"));
                        }
                        line
                    })
                    .collect();
                lines.push(format!("N={} {} in {}ms", report.order, report.status, report.wall_ms));
                lines.join("\n")
            };
            Ok(Outcome { stdout, code: if report.passed() { EXIT_OK } else { EXIT_FAILURE } })
        }
        Command::Powersum { n, out } => {
            let p = power_sum_poly::<BigInt>(*n);
            let oracle = power_sum_oracle::<BigInt>(*n).map_err(|e| CliError::Compute(e.to_string()))?;
            if oracle != p {
                return Err(CliError::Compute(format!("recursion and elimination disagree at N = {n}")));
            }
            let fields = json!({ "power": n, "polynomial": p.to_string() });
            Ok(Outcome::ok(render(*out, "sl3-powersum/1", fields, &p)))
        }
        Command::NormalForm { expression, n, out } => {
            let text = match n {
                None => parse_expression(&Engine::<LaurentZ>::new(Generic), expression)?.to_string(),
                Some(n) => parse_expression(&Engine::<CyclotomicZ>::new(root(*n)?), expression)?.to_string(),
            };
            let fields = json!({ "order": n, "normal_form": text });
            Ok(Outcome::ok(render(*out, "sl3-normal-form/1", fields, &text)))
        }
        Command::EvalWeb { file, n, evaluator, seed, out } => {
            let text = std::fs::read_to_string(file).map_err(|source| CliError::Io { path: file.clone(), source })?;
            let web = WebDiagram::from_json(&text)?;
            let strategy = seed.map_or(FaceStrategy::SmallestFirst, FaceStrategy::Random);
            let value = match evaluator {
                Evaluator::Faces => evaluate_closed_with(&web, strategy, DEFAULT_WEB_FUEL)?,
                Evaluator::Tensor => evaluate_closed_tensor(&web)?,
                Evaluator::Both => {
                    let a = evaluate_closed_with(&web, strategy, DEFAULT_WEB_FUEL)?;
                    let b = evaluate_closed_tensor(&web)?;
                    if a != b {
                        return Err(CliError::Compute(format!("evaluators disagree: {a} vs {b}")));
                    }
                    a
                }
            };
            let at_root = n.map(|n| specialize(&value, n)).transpose()?;
            let fields = json!({
                "value": value.to_string(),
                "order": n,
                "value_at_root": at_root.as_ref().map(|v| v.to_string()),
            });
            let shown = at_root.map_or_else(|| value.to_string(), |r| r.to_string());
            Ok(Outcome::ok(render(*out, "sl3-eval-web/1", fields, shown)))
        }
        Command::Thread { n, out } => {
            let p = power_sum_poly::<BigInt>(*n);
            let threaded = thread_core(&p);
            let unknot = eval_threaded_unknot(&p);
            let at_root = RootOfUnity::new(*n).ok().map(|_| specialize(&unknot, *n)).transpose()?;
            let fields = json!({
                "power": n,
                "threaded": threaded.to_string(),
                "unknot": unknot.to_string(),
                "unknot_at_root": at_root.as_ref().map(|v| v.to_string()),
            });
            let mut text = format!("{threaded}\nunknot: {unknot}");
            if let Some(r) = &at_root {
                text.push_str(&format!("\nunknot at order {n}: {r}"));
            }
            Ok(Outcome::ok(render(*out, "sl3-thread/1", fields, text)))
        }
        Command::Split { cuts, element, n, out } => {
            if *cuts == 0 {
                return Err(CliError::Usage("--cuts must be at least 1".into()));
            }
            let elem = parse_annulus(element)?;
            let text = match n {
                None => split_text(&Engine::<LaurentZ>::new(Generic), *cuts, &elem)?,
                Some(n) => split_text(&Engine::<CyclotomicZ>::new(root(*n)?), *cuts, &elem)?,
            };
            let fields = json!({ "cuts": cuts, "order": n, "element": elem.to_string(), "split": text });
            Ok(Outcome::ok(render(*out, "sl3-split/1", fields, &text)))
        }
    }
}

fn split_text<C: Coeff<Int = BigInt>>(
    engine: &Engine<C>,
    cuts: usize,
    elem: &sl3_core::webs::AnnulusElem,
) -> Result<String, CliError> {
    Ok(split_annulus(engine, cuts, elem)?.to_string())
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the text for stdout or stderr and the exit code.
pub fn run<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() { (String::new(), text, code) } else { (text, String::new(), code) };
        }
    };
    match dispatch(&cli.command) {
        Ok(o) => (o.stdout, String::new(), o.code),
        Err(e) => (String::new(), format!("error: {e}"), e.exit_code()),
    }
}
