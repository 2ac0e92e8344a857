use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use fitkernel::cli::{run, Command, Format, Verb};

/// Fitting invariants, reduced norms and central conductors of group rings.
#[derive(Parser)]
#[command(name = "fitkernel", version)]
struct Args {
    /// Computation to run.
    #[arg(value_enum)]
    verb: Verb,
    /// Request as inline JSON, a file path, or `-` for stdin.
    #[arg(default_value = "-")]
    input: String,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let out = run(&Command { verb: args.verb, input: args.input, format: args.format });
    // A closed stdout or stderr (for example `| head`) is not an error worth a panic.
    let _ = if out.status == 0 {
        writeln!(std::io::stdout(), "{}", out.report)
    } else {
        writeln!(std::io::stderr(), "{}", out.report)
    };
    ExitCode::from(out.status as u8)
}
