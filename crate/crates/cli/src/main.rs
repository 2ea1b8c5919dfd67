//! `fixprov`: evaluate LFP sentences over annotated finite structures.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "fixprov", version, about = "Semiring provenance for least and greatest fixed-point logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the negation normal form of a formula.
    Nnf(NnfArgs),
    /// Evaluate a sentence under the annotation of a problem file.
    Eval(EvalArgs),
    /// Export the model-checking game of a sentence and value its strategies.
    Game(GameArgs),
    /// Run the randomized property suites, or the instance checks of one problem.
    Check(CheckArgs),
}

/// A formula is given inline, or as `@path` to read it from a file.
#[derive(Args, Debug)]
pub struct Input {
    /// Problem file (JSON) with universe, relations and annotations.
    #[arg(short, long)]
    pub problem: std::path::PathBuf,
    /// Read the problem's values in this carrier instead of the one it names.
    #[arg(long)]
    pub carrier: Option<String>,
    /// Formula text, or @FILE.
    pub formula: String,
}

#[derive(Args, Debug, Clone)]
pub struct Widening {
    /// Initial widening threshold for greatest fixed points in sorp.
    #[arg(long, value_name = "N")]
    pub widen_b0: Option<u32>,
    /// Largest widening threshold tried before giving up.
    #[arg(long, value_name = "N")]
    pub widen_bmax: Option<u32>,
}

#[derive(Args, Debug)]
pub struct NnfArgs {
    /// Relations as NAME:ARITY, comma separated.
    #[arg(long, value_delimiter = ',', required_unless_present = "problem", conflicts_with = "problem")]
    pub relations: Vec<String>,
    /// Take the vocabulary and universe from a problem file.
    #[arg(short, long)]
    pub problem: Option<std::path::PathBuf>,
    /// Formula text, or @FILE.
    pub formula: String,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub input: Input,
    #[command(flatten)]
    pub widening: Widening,
    /// Print every fixed-point iteration result to stderr.
    #[arg(long)]
    pub trace: bool,
    /// Map the result into CARRIER with an assignment file, or `identity`
    /// (posbool only).
    #[arg(long, num_args = 2, value_names = ["CARRIER", "ASSIGNMENT"])]
    pub specialize: Option<Vec<String>>,
}

#[derive(Args, Debug)]
pub struct GameArgs {
    #[command(flatten)]
    pub input: Input,
    #[command(flatten)]
    pub widening: Widening,
    /// List every positional strategy as `index<TAB>winning<TAB>value`.
    #[arg(long)]
    pub strategies: bool,
    /// Compare the supremum of strategy values with the evaluation.
    #[arg(long)]
    pub check_sum: bool,
    /// Refuse to enumerate more positional strategies than this.
    #[arg(long, value_name = "N", default_value_t = fixprov_core::game::DEFAULT_STRATEGY_CAP)]
    pub strategy_cap: u128,
    /// Write the DOT graph to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub dot: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Check one problem instance instead of the generated suites.
    #[arg(short, long, requires = "formula")]
    pub problem: Option<std::path::PathBuf>,
    #[arg(long, requires = "problem")]
    pub carrier: Option<String>,
    /// Formula text, or @FILE (with --problem).
    pub formula: Option<String>,
    /// Run only these suites.
    #[arg(long = "suite", value_name = "NAME")]
    pub suites: Vec<String>,
    /// List the suite names and exit.
    #[arg(long)]
    pub list: bool,
    #[arg(long, value_name = "N", default_value_t = fixprov_core::check::CheckConfig::default().seed)]
    pub seed: u64,
    /// Cases per suite.
    #[arg(long, value_name = "N", default_value_t = fixprov_core::check::CheckConfig::default().cases)]
    pub cases: usize,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Nnf(a) => commands::nnf(a),
        Command::Eval(a) => commands::eval(a),
        Command::Game(a) => commands::game(a),
        Command::Check(a) => commands::check(a),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            if let Some(out) = failure.partial_output() {
                print!("{out}");
            }
            eprintln!("fixprov: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
