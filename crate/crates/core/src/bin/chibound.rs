use std::process::ExitCode;

use chibound::cli::{error_exit, execute, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = execute(&cli).and_then(|o| o.write_files().map(|()| o));
    match outcome {
        Ok(outcome) => {
            print!("{}", outcome.report_text());
            ExitCode::from(outcome.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit(&e) as u8)
        }
    }
}
