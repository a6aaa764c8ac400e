use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = relpos_cli::Cli::parse();
    match relpos_cli::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
