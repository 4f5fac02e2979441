use std::process::ExitCode;

use clap::Parser;

use conecert::cli::{exit_code, run, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match RunConfig::from_cli(cli) {
        Ok(config) => run(&config),
        Err(e) => {
            eprintln!("conecert: {e}");
            exit_code(&e)
        }
    };
    ExitCode::from(code as u8)
}
