use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use toroidal::cli::{cmd_oracle, cmd_run, cmd_verify, Format};

#[derive(Parser)]
#[command(version, about = "Principalize and toroidalize monomial presentations of a morphism to a surface")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Principalize, lift and classify every round of a scenario
    Run {
        scenario: PathBuf,
        /// Write the trace JSON here instead of stdout
        #[arg(short = 'o', long)]
        trace_out: Option<PathBuf>,
        /// Step budget per round (default grows with the invariants)
        #[arg(long)]
        max_steps: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Replay a trace written by `run` and re-check it
    Verify {
        trace: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Explore every choice of centers up to a total number of blowups
    Oracle {
        scenario: PathBuf,
        #[arg(long, default_value_t = 64)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    let status = match args.command {
        Command::Run {
            scenario,
            trace_out,
            max_steps,
            format,
        } => cmd_run(&scenario, trace_out.as_deref(), max_steps, format, &mut out, &mut err),
        Command::Verify { trace, format } => cmd_verify(&trace, format, &mut out, &mut err),
        Command::Oracle { scenario, depth, format } => cmd_oracle(&scenario, depth, format, &mut out, &mut err),
    };
    ExitCode::from(status.code() as u8)
}
