use std::process::ExitCode;

use caseiso_cli::{run, Cli, CliError};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            let err = CliError::usage(first.trim_start_matches("error: "));
            eprintln!("{}", err.one_line());
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    let stdout = std::io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.one_line());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
