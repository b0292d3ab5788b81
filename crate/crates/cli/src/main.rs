use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use qsearch_cli::{run, Cli, CliError};

fn emit(cli: &Cli, output: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, output)
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(output.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            e.exit()
        }
        Err(e) => {
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            let line = line.strip_prefix("error: ").unwrap_or(line);
            eprintln!("qsearch: error: {line}");
            return ExitCode::from(2);
        }
    };
    match run(&cli).and_then(|out| emit(&cli, &out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qsearch: error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
