//! `qhomfly`: colored HOMFLY polynomials of 2-bridge links from the command
//! line.
//!
//! Exit codes: 0 success, 1 a check or validation failed, 2 malformed input,
//! 3 unclosable family, 4 resource budget exceeded, 5 sequence window too
//! short.

mod cache;
mod commands;
mod record;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cache::Cache;

#[derive(Parser)]
#[command(name = "qhomfly", version, about = "Colored HOMFLY polynomials of 2-bridge links")]
struct Cli {
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one link at one color.
    Eval(EvalArgs),
    /// Evaluate colors 0..=J and write them as a JSON array of records.
    Sequence(SequenceArgs),
    /// Guess and validate a recurrence in the color for a sequence file.
    Recurrence(RecurrenceArgs),
    /// Run cross-checks over every continued fraction up to a crossing count.
    Corpus(CorpusArgs),
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
pub struct LinkArgs {
    /// Continued fraction, comma separated, e.g. `2,3`.
    #[arg(long)]
    pub cf: Option<String>,
    /// Fraction `p/q` of the 2-bridge link.
    #[arg(long)]
    pub fraction: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StartArg {
    /// The start that closes consistently (`up` for two-component links).
    Auto,
    Up,
    Op,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormalizeArg {
    Canonical,
    Raw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
pub struct EvalOptions {
    #[arg(long, value_enum, default_value_t = StartArg::Auto)]
    pub start: StartArg,
    #[arg(long, value_enum, default_value_t = NormalizeArg::Canonical)]
    pub normalize: NormalizeArg,
    /// Give up (exit 4) when a value has more numerator terms than this.
    #[arg(long)]
    pub max_terms: Option<usize>,
}

#[derive(Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub link: LinkArgs,
    #[arg(long)]
    pub color: u32,
    #[command(flatten)]
    pub opts: EvalOptions,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// `s=1`, `a=q^N`, or `i=N` (unreduced two-color value, `i >= color`).
    #[arg(long)]
    pub specialize: Option<String>,
}

#[derive(Args)]
pub struct SequenceArgs {
    #[command(flatten)]
    pub link: LinkArgs,
    #[arg(long)]
    pub max_color: u32,
    #[command(flatten)]
    pub opts: EvalOptions,
    /// Output file; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct RecurrenceArgs {
    /// Sequence file written by `sequence`.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub max_order: usize,
    #[arg(long)]
    pub max_mdeg: usize,
    /// Number of trailing terms held out for validation.
    #[arg(long, default_value_t = 0)]
    pub validate: usize,
    /// Only look for coefficients free of `a`.
    #[arg(long)]
    pub a_free: bool,
    /// Largest intermediate polynomial, in terms, during exact solving.
    #[arg(long, default_value_t = 200_000)]
    pub term_budget: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args)]
pub struct CorpusArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_crossings: u32,
    /// Comma separated subset of homfly, jones, amphichiral, integrality,
    /// determinant, nested-sum; all of them if omitted.
    #[arg(long, value_delimiter = ',')]
    pub checks: Option<Vec<String>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = if cli.no_cache { Cache::disabled() } else { Cache::from_env() };
    let result = match cli.command {
        Command::Eval(args) => commands::eval(&args, &cache),
        Command::Sequence(args) => commands::sequence(&args, &cache),
        Command::Recurrence(args) => commands::recurrence(&args),
        Command::Corpus(args) => commands::corpus(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
