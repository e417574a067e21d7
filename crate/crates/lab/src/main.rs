use std::process::ExitCode;

use clap::Parser;
use gme_lab::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gme-lab: {e}");
            ExitCode::FAILURE
        }
    }
}
