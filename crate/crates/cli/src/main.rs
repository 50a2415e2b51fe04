mod args;
mod commands;
mod error;
mod io;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::Status;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.parallel {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("error: cannot start {n} worker threads: {e}");
            return ExitCode::FAILURE;
        }
    }
    match commands::dispatch(&cli.global, &cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::NonExhaustive) => {
            eprintln!("warning: distance result is not exhaustive; reported values are bounds");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
