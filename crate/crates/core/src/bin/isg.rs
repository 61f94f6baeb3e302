use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use isg_core::cli::{render_text, run_job, Job, COMMANDS};

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Exact checks on inverse semigroups, their algebras and gradings.
#[derive(Parser)]
#[command(name = "isg", version)]
struct Args {
    /// One of the commands listed by --help.
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(COMMANDS))]
    command: String,
    /// JSON input document.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    length: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance for floating point verdicts.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let input = match &args.input {
        None => None,
        Some(path) => {
            let parsed = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))
                .and_then(|text| serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display())));
            match parsed {
                Ok(v) => Some(v),
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return ExitCode::from(2);
                }
            }
        }
    };
    let job = Job { command: args.command, input, window: args.window, length: args.length, seed: args.seed, tol: args.tol };
    let out = run_job(&job);
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out.report).expect("report serializes")),
        Format::Text => println!("{}", render_text(&out.report)),
    }
    ExitCode::from(out.status.exit_code() as u8)
}
