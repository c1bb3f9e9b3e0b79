//! The `roughmeasure` command line: argument parsing, dispatch, rendering.
//!
//! [`run`] never panics on bad input; it returns the text to print and the
//! exit code (0 success or all-pass, 1 verdict or axiom failure, 2 input
//! error).

mod commands;
mod render;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use render::{Format, Report};

/// Exit code for a passing run.
pub const EXIT_OK: i32 = 0;
/// Exit code when a verdict or an axiom check fails.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for malformed input or invalid options.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "roughmeasure",
    version,
    about = "Rough-set approximations, set-valued precision/accuracy measures, partial-algebra axiom checks and classifier metrics"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "tsv", value_parser = ["tsv", "json", "md"])]
    pub format: String,

    /// Suppress discrepancy notes.
    #[arg(long, global = true)]
    pub quiet_discrepancies: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate approximation operators over subsets.
    Approx(ApproxArgs),
    /// Evaluate nabla(x, a, b, c).
    Nabla(MeasureArgs),
    /// Evaluate amalg(x, a, b, c).
    Amalg(MeasureArgs),
    /// Evaluate finv(x, l1, ls, u1, us).
    Finv(MeasureArgs),
    /// Report the structure of a measure's range.
    Range(RangeArgs),
    /// Decide prec1, prec2 or acc5 over a set of subsets.
    Verdict(VerdictArgs),
    /// Check axiom groups on a finite structure.
    Check(CheckArgs),
    /// Derive an operation table on a finite structure.
    Derive(DeriveArgs),
    /// Classifier metrics from counts or a prediction CSV.
    Metrics(MetricsArgs),
}

#[derive(Debug, Args)]
pub struct SpaceArgs {
    /// Granulation JSON: `pairs` (+ `closure`), `blocks` or `neighborhoods`.
    #[arg(long)]
    pub space: Option<PathBuf>,
    /// Information table CSV (first column `object`, `|`-separated values).
    #[arg(long, conflicts_with = "space")]
    pub table: Option<PathBuf>,
    /// Attributes used to derive the relation (default: all).
    #[arg(long, value_delimiter = ',')]
    pub attrs: Vec<String>,
    /// Comparison of valuations: equal, overlap or subset.
    #[arg(long, default_value = "equal")]
    pub comparator: String,
    /// Quantifier over attributes: forall or exists.
    #[arg(long, default_value = "forall")]
    pub quantifier: String,
    /// Read isolated neighborhoods as empty.
    #[arg(long)]
    pub empty_singletons: bool,
    /// Neighborhood direction for the graded operators.
    #[arg(long, default_value = "predecessor", value_parser = ["predecessor", "successor"])]
    pub neighborhoods: String,
}

#[derive(Debug, Args)]
pub struct DomainArgs {
    /// File with one subset per line (`{x1,x2}`, `x1,x2`, `{}`); `#` starts a comment.
    #[arg(long)]
    pub subsets: Option<PathBuf>,
    /// A subset to evaluate; repeatable. Without any, every subset is used.
    #[arg(long = "subset")]
    pub subset: Vec<String>,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub domain: DomainArgs,
    /// Operators as `[NAME=]SPEC` with SPEC one of l, u, ub, lk:K, uk:K, id, fix:FILE.
    #[arg(long, value_delimiter = ',', default_value = "l,u,ub")]
    pub ops: Vec<String>,
    /// Compare column NAME against a fixture file: `NAME=FILE`; repeatable.
    #[arg(long)]
    pub compare_fixture: Vec<String>,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub domain: DomainArgs,
    /// Operator slots as `[NAME=]SPEC`: a,b,c (nabla, amalg) or l1,ls,u1,us (finv).
    #[arg(long, value_delimiter = ',', required = true)]
    pub ops: Vec<String>,
    /// Expected values in fixture layout; differences become notes.
    #[arg(long)]
    pub reference: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub domain: DomainArgs,
    /// nabla, amalg or finv.
    #[arg(long, default_value = "nabla")]
    pub measure: String,
    /// Operator slots of the measure as `[NAME=]SPEC`, in slot order.
    #[arg(long, value_delimiter = ',', required = true)]
    pub ops: Vec<String>,
    /// Operator pair for the definiteness report, `LOWER,UPPER`.
    #[arg(long, value_delimiter = ',')]
    pub definite: Vec<String>,
}

#[derive(Debug, Args)]
pub struct VerdictArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub domain: DomainArgs,
    /// prec1, prec2 or acc5.
    #[arg(long)]
    pub kind: String,
    /// First lower operator slot.
    #[arg(long)]
    pub l1: Option<String>,
    /// Second lower operator slot (prec1).
    #[arg(long)]
    pub l2: Option<String>,
    /// Reference lower operator slot.
    #[arg(long)]
    pub ls: Option<String>,
    /// First upper operator slot (prec2).
    #[arg(long)]
    pub u1: Option<String>,
    /// Reference upper operator slot.
    #[arg(long)]
    pub us: Option<String>,
    /// A member of the importance class; repeatable (`{}` is the empty set).
    #[arg(long)]
    pub so: Vec<String>,
    /// File listing importance-class members, one per line.
    #[arg(long)]
    pub so_file: Option<PathBuf>,
    /// Importance class by rule: sets with empty lower and upper equal to K.
    #[arg(long)]
    pub so_rule: Option<String>,
    /// Operators used by `--so-rule`, `LOWER,UPPER`.
    #[arg(long, value_delimiter = ',', default_value = "l,u")]
    pub so_rule_ops: Vec<String>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Structure JSON (carrier, leq, constants, unary, binary).
    #[arg(long)]
    pub structure: Option<PathBuf>,
    /// Build the powerset structure of a space instead.
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Unary slots of the powerset structure as `SLOT=SPEC`.
    #[arg(long, value_delimiter = ',', default_value = "l1=l,l2=l,ls=l,u1=u,u2=u,us=u")]
    pub slots: Vec<String>,
    /// Axiom groups, comma separated, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub axioms: Vec<String>,
    /// Equality reading of conclusions: as-printed, omega or omega-star.
    #[arg(long, default_value = "as-printed")]
    pub equality: String,
    /// Implication table for the implication group: imp_neg or imp_sim.
    #[arg(long)]
    pub implication: Option<String>,
    /// Implication properties to check (default: all).
    #[arg(long, value_delimiter = ',')]
    pub properties: Vec<String>,
    /// Counterexamples kept per failing axiom.
    #[arg(long, default_value_t = 16)]
    pub max_counterexamples: usize,
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    /// Structure JSON (carrier, leq, constants, unary, binary).
    #[arg(long)]
    pub structure: PathBuf,
    /// dot, otimes, neg, sim, ominus or oplus.
    #[arg(long)]
    pub op: String,
    /// attained or lattice.
    #[arg(long, default_value = "attained")]
    pub bound: String,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// CSV with columns id, score-or-label, truth.
    #[arg(long)]
    pub predictions: Option<PathBuf>,
    /// Counts `TP,FP,TN,FN` instead of a CSV.
    #[arg(long, value_delimiter = ',', conflicts_with = "predictions")]
    pub counts: Vec<u64>,
    /// Token of the positive class.
    #[arg(long, default_value = "1")]
    pub positive: String,
    /// Score at or above which an item is predicted positive.
    #[arg(long, default_value_t = 0.5)]
    pub threshold: f64,
    /// paper, conventional or both.
    #[arg(long, default_value = "both", value_parser = ["paper", "conventional", "both"])]
    pub mode: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return if e.use_stderr() {
                Report { stdout: String::new(), stderr: text, code }
            } else {
                Report { stdout: text, stderr: String::new(), code }
            };
        }
    };
    match commands::dispatch(&cli) {
        Ok(r) => r,
        Err(e) => Report { stdout: String::new(), stderr: format!("error: {e}\n"), code: EXIT_INPUT },
    }
}
