use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use genhilb::{execute, Cli, EXIT_ERROR};

fn run() -> anyhow::Result<i32> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            e.print()?;
            return Ok(0);
        }
        Err(e) => {
            // clap would exit with 2, which is reserved for expectation mismatches
            e.print()?;
            return Ok(EXIT_ERROR);
        }
    };
    let outcome = execute(&cli)?;
    print!("{}", outcome.text);
    if let (Some(path), Some(reports)) = (&cli.out, &outcome.reports) {
        std::fs::write(path, reports.to_json()? + "\n")
            .map_err(|e| anyhow::anyhow!("writing {}: {e}", path.display()))?;
    }
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
