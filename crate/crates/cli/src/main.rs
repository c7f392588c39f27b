use std::process::ExitCode;

use clap::Parser;

use multiport_cli::args::Cli;
use multiport_cli::error::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match multiport_cli::run(&cli).and_then(|outcome| {
        multiport_cli::emit(&outcome)?;
        if outcome.verified {
            Ok(())
        } else {
            Err(CliError::Verification(
                "one or more properties failed".into(),
            ))
        }
    }) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            err.to_exit_code()
        }
    }
}
