use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use hyperherm::decompose::{run_decompose, FormSource};
use hyperherm::report::{run_analysis, LambdaSpec, OutputFormat};
use hyperherm::verify::{parse_baseline, run_verify, VerifyOptions};
use hyperherm::Error;

#[derive(Parser)]
#[command(name = "hyperherm", version, about = "Exact analysis of almost hypercomplex pseudo-Hermitian structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline for one parameter vector or the symbolic family.
    #[command(group(ArgGroup::new("params").required(true).args(["lambda", "symbolic"])))]
    Analyze {
        /// Four rationals, e.g. `1,2,-1/2,0`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Treat l1..l4 as indeterminates.
        #[arg(long)]
        symbolic: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Check every identity and reference table.
    Verify {
        /// Treat expected flags as failures.
        #[arg(long)]
        strict: bool,
        /// Suite to leave out; repeatable.
        #[arg(long)]
        skip: Vec<String>,
        /// Expected-flag file replacing the built-in baseline.
        #[arg(long)]
        baseline: Option<PathBuf>,
    },
    /// Split a bilinear form on R^{4n} into its four projections.
    #[command(group(ArgGroup::new("form").required(true).args(["input", "seed"])))]
    Decompose {
        #[arg(long)]
        n: usize,
        /// Matrix file: one row per line, whitespace-separated rationals.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Seed for a random rational form.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Analyze { lambda, symbolic, format } => {
            let spec = match (lambda, symbolic) {
                (Some(l), false) => LambdaSpec::parse(&l)?,
                _ => LambdaSpec::Symbolic,
            };
            print!("{}", run_analysis(&spec)?.render(format));
            Ok(0)
        }
        Command::Verify { strict, skip, baseline } => {
            let baseline = match baseline {
                Some(p) => Some(parse_baseline(&std::fs::read_to_string(p)?)),
                None => None,
            };
            let summary = run_verify(&VerifyOptions { strict, skip, baseline })?;
            print!("{}", summary.render());
            Ok(summary.exit_code())
        }
        Command::Decompose { n, input, seed, format } => {
            let source = match (input, seed) {
                (Some(p), _) => FormSource::Text(std::fs::read_to_string(p)?),
                (None, Some(s)) => FormSource::Seed(s),
                (None, None) => unreachable!("clap requires one of --input, --seed"),
            };
            let r = run_decompose(n, &source)?;
            match format {
                OutputFormat::Json => print!("{}", r.to_json()),
                OutputFormat::Text => print!("{}", r.to_text()),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
