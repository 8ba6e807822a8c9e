//! `torweyl` command-line interface.
//!
//! Every subcommand reads an action document `{"r": .., "s": .., "L": ..}`
//! (a path, or `-` for standard input) except `examples`, and prints a JSON
//! [`ReportDocument`](report::ReportDocument), or a plain table with
//! `--text`. Indices given on the command line and in operator text are
//! one-based; JSON reports use the library's zero-based indices.
//!
//! Exit codes: 0 on success, 1 for invalid input, 2 when an internal
//! cross-check fails.

pub mod commands;
pub mod families;
pub mod input;
pub mod report;

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use torweyl::TorusAction;

use commands::Output;
use families::Family;
use report::ReportDocument;

#[derive(Debug, Parser)]
#[command(name = "torweyl", version, about = "Invariant differential operators for diagonal torus actions")]
pub struct Cli {
    /// Print a plain-text table instead of JSON.
    #[arg(long, global = true)]
    pub text: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ActionArg {
    /// Action document, or `-` for standard input.
    pub action: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full analysis: transitivity, slice data, flip set or obstruction.
    Analyze(ActionArg),
    /// Block normal form of the weight matrix with its transforms.
    NormalForm(ActionArg),
    /// Weight-space dimensions.
    Dims {
        #[command(flatten)]
        action: ActionArg,
        /// Character in raw coordinates, comma separated.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "sweep", required_unless_present = "sweep")]
        chi: Option<String>,
        /// Every weight space whose grade is at most this bound.
        #[arg(long)]
        sweep: Option<String>,
    },
    /// Truncated generating function of the weight-space dimensions.
    Series {
        #[command(flatten)]
        action: ActionArg,
        /// Truncation bound on the grade (rational).
        #[arg(long)]
        bound: String,
    },
    /// Apply an operator to a monomial.
    Act {
        #[command(flatten)]
        action: ActionArg,
        /// Operator, e.g. `2 * Pi(1) * u[1,-1]`.
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        /// Exponent vector of the monomial, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        mono: String,
        /// Act on the twisted module for this index set (one-based).
        #[arg(long)]
        flip: Option<String>,
    },
    /// Flip set, or the operators witnessing the obstruction.
    Witness(ActionArg),
    /// Check that the slice section is a bijection on bounded exponents.
    IsoCheck {
        #[command(flatten)]
        action: ActionArg,
        #[arg(long)]
        bound: u64,
    },
    /// Generate and analyse an example family.
    Examples {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        /// Weights `b_1,...,b_n` for the odd family.
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
    },
}

/// Runs the tool on `argv` (including the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                _ => 1,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn exit_code(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<torweyl::Error>() {
        Some(torweyl::Error::InternalConsistency(_)) => 2,
        _ => 1,
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<String> {
    let limit = input::enum_limit()?;
    let (name, action, options, output): (&str, Option<TorusAction>, serde_json::Value, Output) = match &cli.command {
        Command::Analyze(arg) => {
            let (a, _) = input::read_action(&arg.action)?;
            let o = commands::analyze_cmd(&a)?;
            ("analyze", Some(a), json!({}), o)
        }
        Command::NormalForm(arg) => {
            let (a, _) = input::read_action(&arg.action)?;
            let o = commands::normal_form_cmd(&a)?;
            ("normal-form", Some(a), json!({}), o)
        }
        Command::Dims { action, chi, sweep } => {
            let (a, _) = input::read_action(&action.action)?;
            let o = match (chi, sweep) {
                (Some(chi), _) => commands::dims_chi_cmd(&a, &input::parse_int_vector(chi)?, limit)?,
                (None, Some(b)) => commands::dims_sweep_cmd(&a, &input::parse_bound(b)?, limit)?,
                (None, None) => anyhow::bail!("dims needs --chi or --sweep"),
            };
            ("dims", Some(a), json!({ "chi": chi, "sweep": sweep, "max_box": limit.0 }), o)
        }
        Command::Series { action, bound } => {
            let (a, _) = input::read_action(&action.action)?;
            let o = commands::series_cmd(&a, &input::parse_bound(bound)?, limit)?;
            ("series", Some(a), json!({ "bound": bound, "max_box": limit.0 }), o)
        }
        Command::Act { action, op, mono, flip } => {
            let (a, _) = input::read_action(&action.action)?;
            let flip_set = flip.as_deref().map(|f| input::parse_index_set(f, a.r())).transpose()?;
            let o = commands::act_cmd(&a, op, &input::parse_i64_vector(mono)?, flip_set.as_deref())?;
            ("act", Some(a), json!({ "op": op, "mono": mono, "flip": flip }), o)
        }
        Command::Witness(arg) => {
            let (a, _) = input::read_action(&arg.action)?;
            let o = commands::witness_cmd(&a)?;
            ("witness", Some(a), json!({}), o)
        }
        Command::IsoCheck { action, bound } => {
            let (a, _) = input::read_action(&action.action)?;
            let o = commands::iso_check_cmd(&a, *bound, limit)?;
            ("iso-check", Some(a), json!({ "bound": bound, "max_box": limit.0 }), o)
        }
        Command::Examples { family, n, weights } => {
            let w = weights.as_deref().map(input::parse_i64_vector).transpose()?;
            let o = commands::examples_cmd(*family, *n, w)?;
            ("examples", None, json!({ "family": family, "n": n, "weights": weights }), o)
        }
    };
    if cli.text {
        return Ok(output.text);
    }
    Ok(ReportDocument::new(name, action.as_ref(), options, output.result).render())
}
