use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use spangen::cli::{emit, run, Cli};
use spangen::CliError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.to_string().trim_end().to_string());
            let _ = writeln!(std::io::stderr(), "{}", err.to_json());
            return ExitCode::from(2);
        }
    };
    match run(&cli, &mut std::io::stdin().lock()) {
        Ok(out) => {
            if emit(&mut std::io::stdout().lock(), &out.text).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
