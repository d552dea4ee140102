mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use psibound::Error;

use args::Cli;

/// Exit status when some verdict is not `holds`.
const EXIT_UNDECIDED: u8 = 1;
/// Exit status for invalid input.
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.config, &cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.body.as_bytes()).is_err() {
                return ExitCode::FAILURE;
            }
            if out.all_hold {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_UNDECIDED)
            }
        }
        Err(e) => {
            eprintln!("psibound: {e}");
            match e {
                Error::Unsupported(_) => ExitCode::from(EXIT_UNDECIDED),
                Error::Domain(_) | Error::Argument(_) | Error::Parse(_) => {
                    ExitCode::from(EXIT_USAGE)
                }
            }
        }
    }
}
