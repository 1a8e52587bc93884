use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = cli_runner::Cli::parse();
    match cli_runner::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
