//! Command-line front end for the `innerform` library.

mod commands;
mod labels;

use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed input; exit status 2.
    Usage(String),
    /// Well-formed input with no mathematical answer; exit status 1.
    Domain(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

/// Rendered result of one subcommand.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    /// Nonzero when the answer is a negative verdict (printed, then exit 1).
    pub code: u8,
}

#[derive(Parser)]
#[command(name = "innerform", version, about = "Levi subgroups, Satake diagrams and inner forms of split reductive groups")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct GroupSel {
    /// Group expression, e.g. "Sp(8)", "E7sc", "GL(3)xGL(2)".
    #[arg(value_name = "GROUP")]
    pub group: Option<String>,
    #[arg(long = "group", value_name = "GROUP", conflicts_with = "group")]
    pub group_flag: Option<String>,
}

#[derive(Args)]
pub struct LeviArgs {
    #[command(flatten)]
    pub group: GroupSel,
    /// Removed simple roots: "a4", "a2,a4" or "Delta-{a4}".
    #[arg(long, conflicts_with = "theta")]
    pub remove: Option<String>,
    /// Simple roots of the Levi, e.g. "a1,a2,a3".
    #[arg(long)]
    pub theta: Option<String>,
}

#[derive(Args)]
pub struct SatakeArgs {
    #[command(flatten)]
    pub group: GroupSel,
    #[arg(long)]
    pub remove: String,
    /// Division degrees, one per envelope block, in envelope order.
    #[arg(long, conflicts_with = "black")]
    pub degrees: Option<String>,
    /// Black vertices of the Satake diagram, e.g. "a2,a5,a7".
    #[arg(long)]
    pub black: Option<String>,
}

#[derive(Args)]
pub struct WeylArgs {
    #[command(flatten)]
    pub group: GroupSel,
    #[arg(long, conflicts_with = "theta")]
    pub remove: Option<String>,
    #[arg(long)]
    pub theta: Option<String>,
}

#[derive(Args)]
pub struct InnerFormsArgs {
    /// "GL(n)".
    #[arg(value_name = "GROUP")]
    pub group: Option<String>,
    #[arg(long, conflicts_with = "group")]
    pub n: Option<u64>,
}

#[derive(Args)]
pub struct GlobalizeArgs {
    #[arg(long)]
    pub prime: u64,
    /// Number of places `l` with completion isomorphic to the base field.
    #[arg(long)]
    pub places: usize,
    /// Order of the class in `A(G_ad)`.
    #[arg(long)]
    pub class_order: u64,
    /// Residue of the class in `Z/class_order`.
    #[arg(long, default_value_t = 1)]
    pub class: u64,
}

#[derive(Args)]
pub struct DivisionArgs {
    #[arg(long)]
    pub n: u64,
    /// Local invariants, e.g. "v1=1/2,v2=1/3,v3=1/6"; "real:r=1/2" for a real place.
    #[arg(long)]
    pub inv: String,
}

#[derive(Args)]
pub struct LjArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: u32,
    /// Virtual element, e.g. "(2,4):a,b + 3*(6):c". Read from stdin when absent or "-".
    #[arg(long, allow_hyphen_values = true)]
    pub element: Option<String>,
    /// Appended to every tag by the correspondence on discrete series.
    #[arg(long, default_value = "'")]
    pub suffix: String,
}

#[derive(Subcommand)]
enum Command {
    /// Structure of a standard Levi subgroup.
    Levi(LeviArgs),
    /// Inner form of a Levi subgroup from division degrees or a Satake diagram.
    Satake(SatakeArgs),
    /// The catalog of maximal Levi subgroups and their inner forms, recomputed.
    #[command(name = "appendix-a")]
    AppendixA,
    /// Weyl group order, w_theta and reduced roots.
    Weyl(WeylArgs),
    /// The group A(G) and its order.
    Kottwitz(GroupSel),
    /// Inner forms of GL_n.
    #[command(name = "inner-forms")]
    InnerForms(InnerFormsArgs),
    /// Places, tower primes and cocycle for a global inner form.
    Globalize(GlobalizeArgs),
    /// Local data of a central simple algebra from its Hasse invariants.
    #[command(name = "division-algebra")]
    DivisionAlgebra(DivisionArgs),
    /// The transfer LJ from GL_n(F) to GL_{n/d}(D_d).
    Lj(LjArgs),
}

fn run(command: Command) -> Result<Output, CliError> {
    match command {
        Command::Levi(a) => commands::levi(&a),
        Command::Satake(a) => commands::satake(&a),
        Command::AppendixA => commands::appendix_a(),
        Command::Weyl(a) => commands::weyl(&a),
        Command::Kottwitz(a) => commands::kottwitz(&a),
        Command::InnerForms(a) => commands::inner_forms(&a),
        Command::Globalize(a) => commands::globalize(&a),
        Command::DivisionAlgebra(a) => commands::division_algebra(&a),
        Command::Lj(a) => commands::lj(&a),
    }
}

/// What one invocation writes and the status it exits with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

/// Runs the command line `args` (program name first) without touching the process streams.
pub fn execute<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Invocation { stdout, stderr, code: e.exit_code() as u8 };
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("serializable output")
            } else {
                out.text
            };
            if !body.ends_with('\n') {
                body.push('\n');
            }
            Invocation { stdout: body, stderr: String::new(), code: out.code }
        }
        Err(e) => Invocation { stdout: String::new(), stderr: format!("error: {}\n", e.message()), code: e.code() },
    }
}
