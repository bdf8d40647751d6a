//! Command dispatch for the `qplane` binary.
//!
//! [`run`] never prints or exits; it returns the rendered report together
//! with the exit status so that it can be tested in-process.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qplane_core::catalog::{classify_label, enumerate_classification, invariant_phi, star_pattern};
use qplane_core::classical::{check_sl2, classical_limit};
use qplane_core::expr::ExprError;
use qplane_core::hopf::{check_module_algebra, Evaluator};
use qplane_core::repr::composition_report;
use qplane_core::{build, parse_expression, Action, FamilyTag, QScalar, SeriesFamily, SeriesLabel};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_MAX_DEGREE: &str = "8";

#[derive(Debug, Parser)]
#[command(name = "qplane", version, about = "U_q(sl2)-module algebra structures on the quantum plane")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// How the action is specified.
#[derive(Debug, Clone, Args, Default)]
pub struct Target {
    /// Family name: Trivial, Standard, EB0, FC0, EA0 or FD0.
    #[arg(long)]
    pub family: Option<String>,
    /// Family parameter as name=value, the value in the q-scalar grammar.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// JSON file with fields alpha, beta, e_x, e_y, f_x, f_y.
    #[arg(long, conflicts_with_all = ["family", "params"])]
    pub action_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the module-algebra axioms up to a degree.
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long, env = "QPLANE_MAX_DEGREE", default_value = DEFAULT_MAX_DEGREE)]
        max_degree: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Classify star-matrix labels.
    Classify {
        /// Enumerate every admissible label.
        #[arg(long, conflicts_with = "label", required_unless_present = "label")]
        all: bool,
        /// A single label such as "[0*/00; 00/00]".
        #[arg(long)]
        label: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate an expression such as "e(x*y)" under an action.
    Act {
        #[command(flatten)]
        target: Target,
        expression: String,
        #[command(flatten)]
        output: Output,
    },
    /// Composition series of the truncated module.
    Decompose {
        #[command(flatten)]
        target: Target,
        #[arg(long, env = "QPLANE_MAX_DEGREE", default_value = DEFAULT_MAX_DEGREE)]
        cutoff: u32,
        /// Dimension of the window on which quotients are matched to Verma modules.
        #[arg(long, default_value_t = 6)]
        window: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Classical q -> 1 limit and the sl2 check.
    Classical {
        #[command(flatten)]
        target: Target,
        #[arg(long, env = "QPLANE_MAX_DEGREE", default_value = DEFAULT_MAX_DEGREE)]
        max_degree: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Everything known about one family member.
    Report {
        #[command(flatten)]
        target: Target,
        #[arg(long, env = "QPLANE_MAX_DEGREE", default_value = DEFAULT_MAX_DEGREE)]
        max_degree: u32,
        #[arg(long, default_value_t = 6)]
        window: usize,
        #[command(flatten)]
        output: Output,
    },
}

/// Rendered result of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn new(passed: bool, stdout: String) -> Self {
        let code = if passed { EXIT_OK } else { EXIT_FAILURE };
        Outcome { code, stdout, stderr: String::new() }
    }

    fn usage(message: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: message.into() }
    }

    fn failure(message: impl Into<String>) -> Self {
        Outcome { code: EXIT_FAILURE, stdout: String::new(), stderr: message.into() }
    }
}

fn render(format: Format, text: String, value: Value) -> String {
    match format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&value).expect("serializable"),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, QScalar>, String> {
    let mut out = BTreeMap::new();
    for item in raw {
        let (name, value) = item.split_once('=').ok_or(format!("parameter '{item}' is not of the form name=value"))?;
        let scalar: QScalar = value.trim().parse().map_err(|e| format!("parameter {name}: {e}"))?;
        if out.insert(name.trim().to_string(), scalar).is_some() {
            return Err(format!("parameter {name} given twice"));
        }
    }
    Ok(out)
}

fn resolve_family(target: &Target) -> Result<SeriesFamily, String> {
    let name = target.family.as_deref().ok_or("--family is required")?;
    let tag: FamilyTag = name.parse().map_err(|e| format!("{e}"))?;
    let params = parse_params(&target.params)?;
    SeriesFamily::from_params(tag, &params).map_err(|e| e.to_string())
}

/// The action and, when it came from the catalog, its family.
fn resolve_action(target: &Target) -> Result<(Action, Option<SeriesFamily>), String> {
    if let Some(path) = &target.action_file {
        let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let action: Action =
            serde_json::from_str(&text).map_err(|e| format!("invalid action file {}: {e}", path.display()))?;
        return Ok((action, None));
    }
    let family = resolve_family(target)?;
    Ok((build(&family), Some(family)))
}

fn describe(action: &Action, family: &Option<SeriesFamily>) -> (String, Value) {
    match family {
        Some(f) => (f.to_string(), to_json(f)),
        None => ("action from file".to_string(), to_json(action)),
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify { target, max_degree, output } => verify(&target, max_degree, output.format),
        Command::Classify { all, label, output } => classify(all, label.as_deref(), output.format),
        Command::Act { target, expression, output } => act(&target, &expression, output.format),
        Command::Decompose { target, cutoff, window, output } => decompose(&target, cutoff, window, output.format),
        Command::Classical { target, max_degree, output } => classical(&target, max_degree, output.format),
        Command::Report { target, max_degree, window, output } => report(&target, max_degree, window, output.format),
    }
}

/// Parses `args` (without the program name) and runs the command.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("qplane")).chain(args.into_iter().map(Into::into));
    match Cli::try_parse_from(argv) {
        Ok(cli) => run(cli),
        Err(e) => {
            let rendered = e.render().to_string();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: rendered, stderr: String::new() }
                }
                _ => Outcome::usage(rendered),
            }
        }
    }
}

fn verify(target: &Target, max_degree: u32, format: Format) -> Outcome {
    let (action, family) = match resolve_action(target) {
        Ok(v) => v,
        Err(e) => return Outcome::usage(e),
    };
    let report = check_module_algebra(&action, max_degree);
    let (name, who) = describe(&action, &family);
    let text = format!("{name}\n{report}\n");
    let mut value = to_json(&report);
    value["subject"] = who;
    Outcome::new(report.passed, render(format, text, value))
}

fn classify(all: bool, label: Option<&str>, format: Format) -> Outcome {
    if all {
        let summary = enumerate_classification();
        let mut text = format!(
            "{} admissible labels: {} nonempty, {} empty\n",
            summary.total, summary.nonempty, summary.empty
        );
        for s in &summary.nonempty_series {
            text.push_str(&format!("  {}  {}\n", s.label, s.family));
        }
        for s in &summary.empty_series {
            text.push_str(&format!("  {}  empty: {}\n", s.label, s.reason));
        }
        return Outcome::new(true, render(format, text, to_json(&summary)));
    }
    let Some(raw) = label else {
        return Outcome::usage("either --all or --label is required");
    };
    let label: SeriesLabel = match raw.parse() {
        Ok(l) => l,
        Err(e) => return Outcome::usage(format!("{e}")),
    };
    let outcome = classify_label(&label);
    let verdict = match (&outcome.kind, outcome.family()) {
        (_, Some(tag)) => format!("nonempty: {tag}"),
        (qplane_core::catalog::OutcomeKind::Empty { reason }, _) => format!("empty: {reason}"),
        (qplane_core::catalog::OutcomeKind::Excluded { reason }, _) => format!("excluded: {reason}"),
        _ => unreachable!("nonempty outcomes carry a family"),
    };
    let weights = outcome.forced_weights.as_ref().map_or("unconstrained".to_string(), |w| w.to_string());
    let text = format!("{label}\n{verdict}\nweights: {weights}\n");
    let mut value = to_json(&outcome);
    value["label"] = json!(label.to_string());
    Outcome::new(true, render(format, text, value))
}

fn expr_error(e: ExprError) -> Outcome {
    match e {
        ExprError::DivisionByZero => Outcome::failure(e.to_string()),
        _ => Outcome::usage(e.to_string()),
    }
}

fn act(target: &Target, src: &str, format: Format) -> Outcome {
    let (action, family) = match resolve_action(target) {
        Ok(v) => v,
        Err(e) => return Outcome::usage(e),
    };
    let expr = match parse_expression(src) {
        Ok(e) => e,
        Err(e) => return expr_error(e),
    };
    let ev = Evaluator::new(&action);
    let result = match expr.evaluate_with(&ev) {
        Ok(p) => p,
        Err(e) => return expr_error(e),
    };
    let (_, who) = describe(&action, &family);
    let value = json!({
        "subject": who,
        "expression": qplane_core::render(&expr),
        "result": result.to_string(),
    });
    Outcome::new(true, render(format, format!("{result}\n"), value))
}

fn decompose(target: &Target, cutoff: u32, window: usize, format: Format) -> Outcome {
    if target.action_file.is_some() {
        return Outcome::usage("decompose needs a catalog family, not an action file");
    }
    let family = match resolve_family(target) {
        Ok(f) => f,
        Err(e) => return Outcome::usage(e),
    };
    let report = composition_report(&family, cutoff, window);
    Outcome::new(report.passed, render(format, format!("{report}\n"), to_json(&report)))
}

fn classical_section(action: &Action, max_degree: u32) -> (bool, String, Value) {
    match classical_limit(action) {
        Ok(limit) => {
            let sl2 = check_sl2(&limit, max_degree);
            let text = format!("{limit}\n{sl2}\n");
            let value = json!({ "limit": to_json(&limit), "sl2": to_json(&sl2) });
            (sl2.passed, text, value)
        }
        Err(no) => (false, format!("no classical limit: {no}\n"), json!({ "no_limit": to_json(&no) })),
    }
}

fn classical(target: &Target, max_degree: u32, format: Format) -> Outcome {
    let (action, family) = match resolve_action(target) {
        Ok(v) => v,
        Err(e) => return Outcome::usage(e),
    };
    let (passed, text, mut value) = classical_section(&action, max_degree);
    let (name, who) = describe(&action, &family);
    value["subject"] = who;
    Outcome::new(passed, render(format, format!("{name}\n{text}"), value))
}

fn report(target: &Target, max_degree: u32, window: usize, format: Format) -> Outcome {
    if target.action_file.is_some() {
        return Outcome::usage("report needs a catalog family, not an action file");
    }
    let family = match resolve_family(target) {
        Ok(f) => f,
        Err(e) => return Outcome::usage(e),
    };
    let action = build(&family);
    let label = SeriesLabel::of(&action);
    let outcome = classify_label(&label);
    let phi = invariant_phi(&family);
    let axioms = check_module_algebra(&action, max_degree);
    let (classical_ok, classical_text, classical_value) = classical_section(&action, max_degree);
    let composition = composition_report(&family, max_degree, window);
    // A sign-flipped trivial action has no limit by design; that is not a failure.
    let limit_expected = !matches!(family, SeriesFamily::Trivial { sign_x, sign_y } if sign_x != 1 || sign_y != 1);
    let passed = axioms.passed && composition.passed && (classical_ok || !limit_expected);

    let mut text = format!("{family}\n\naction:\n{action}\n\n");
    text.push_str(&format!(
        "label: {label} (degree-2 pattern {})\n",
        star_pattern(&action, 2)
    ));
    text.push_str(&format!("classification: {}\n", outcome.family().map_or("not nonempty".into(), |t| t.to_string())));
    text.push_str(&format!("phi: {}\n\n", phi.as_ref().map_or("n/a".into(), |p| p.to_string())));
    text.push_str(&format!("axioms:\n{axioms}\n\n"));
    text.push_str(&format!("classical limit:\n{classical_text}\n"));
    text.push_str(&format!("composition series:\n{composition}\n"));

    let value = json!({
        "subject": to_json(&family),
        "action": to_json(&action),
        "label": label.to_string(),
        "classification": to_json(&outcome),
        "phi": phi.map(|p| p.to_string()),
        "axioms": to_json(&axioms),
        "classical": classical_value,
        "composition": to_json(&composition),
        "passed": passed,
    });
    Outcome::new(passed, render(format, text, value))
}
