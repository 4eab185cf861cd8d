use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qbcr::cli::{self, Command, Format, Options, Outcome};

#[derive(Parser)]
#[command(name = "qbcr", version, about = "Condition belief assignments on hybrid frames")]
struct Args {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Tsv,
}

#[derive(clap::Args)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Also print rational masses as six-place decimals.
    #[arg(long)]
    decimal: bool,
}

impl Common {
    fn options(&self) -> Options {
        let format = match self.format {
            FormatArg::Text => Format::Text,
            FormatArg::Tsv => Format::Tsv,
        };
        Options { format, decimal: self.decimal }
    }
}

#[derive(clap::Args)]
struct Target {
    /// Scenario file.
    #[arg(required_unless_present = "all", conflicts_with = "all")]
    file: Option<PathBuf>,
    /// Run on every `*.scn` file in a directory.
    #[arg(long, value_name = "DIR")]
    all: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply the scenario's conditioning rule.
    Condition(Target),
    /// Classify prior focal elements as D1, D2 or D3.
    Decompose(Target),
    /// Validate the prior assignment.
    Check(Target),
    /// Combine two quantitative assignments with Dempster's rule.
    Combine {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn run_target(command: Command, t: &Target) -> Outcome {
    let opts = t.common.options();
    match (&t.all, &t.file) {
        (Some(dir), _) => cli::run_all(command, dir, opts),
        (None, Some(file)) => cli::run_command(command, file, opts),
        (None, None) => unreachable!("clap requires a file or --all"),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let outcome = match &args.command {
        Cmd::Condition(t) => run_target(Command::Condition, t),
        Cmd::Decompose(t) => run_target(Command::Decompose, t),
        Cmd::Check(t) => run_target(Command::Check, t),
        Cmd::Combine { first, second, common } => cli::run_combine(first, second, common.options()),
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
