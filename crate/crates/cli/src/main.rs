mod args;
mod commands;
mod manifest;
mod output;

use std::process::ExitCode;

use anyhow::Result;
use clap::Parser;

use args::{Cli, Command};
use commands::{execute, Outcome};
use manifest::RunManifest;

const EXIT_NOT_CONVERGED: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn dispatch(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Solve(a) => execute(&a.invocation()?, a.seed, &a.output.out_dir),
        Command::CsRecover(a) => execute(&a.invocation()?, a.recovery.seed, &a.output.out_dir),
        Command::HSweep(a) => execute(&a.invocation()?, a.recovery.seed, &a.output.out_dir),
        Command::Bench(a) => execute(&a.invocation()?, a.seed, &a.output.out_dir),
        Command::Replay(a) => {
            let m = RunManifest::load(&a.manifest)?;
            execute(&m.run, m.seed, &a.output.out_dir)
        }
    }
}

/// Bad arguments and invalid problem data are usage errors; anything else
/// (I/O, a numerical breakdown) counts as a failed run.
fn is_usage_error(err: &anyhow::Error) -> bool {
    err.chain().any(|cause| {
        matches!(
            cause.downcast_ref::<nbbl1::Error>(),
            Some(nbbl1::Error::InvalidArgument(_) | nbbl1::Error::Config(_) | nbbl1::Error::Dimension { .. })
        )
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(outcome) => {
            println!("{}", outcome.message);
            println!("outputs: {}", outcome.dir.display());
            if outcome.converged {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_NOT_CONVERGED)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(if is_usage_error(&err) { EXIT_USAGE } else { EXIT_NOT_CONVERGED })
        }
    }
}
