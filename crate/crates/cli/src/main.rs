use std::process::ExitCode;

use clap::Parser;
use theta_forge_cli::{emit, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.common().out.clone();
    let code = match run(&cli) {
        Ok(output) => match emit(&output.json, out.as_deref()) {
            Ok(()) => output.code,
            Err(e) => {
                eprintln!("error: {e}");
                e.code()
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    };
    ExitCode::from(code as u8)
}
