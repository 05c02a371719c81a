mod args;
mod run;
mod text;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

const ENGINE_ERROR: u8 = 3;
const USAGE_ERROR: u8 = 4;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(USAGE_ERROR),
            };
        }
    };
    match run::dispatch(&cli.command, &cli.global) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.render(cli.global.json).as_bytes()).is_err() {
                return ExitCode::from(ENGINE_ERROR);
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(ENGINE_ERROR)
        }
    }
}
