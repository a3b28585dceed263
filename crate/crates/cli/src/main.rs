mod args;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;
use crate::commands::Failure;

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_NUMERIC: u8 = 2;

fn report(kind: &str, code: &str, message: &str) {
    let doc = serde_json::json!({ "error": kind, "code": code, "message": message });
    eprintln!("{doc}");
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("APLINE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Failure::numeric(
            "APLINE_THREADS",
            format!("{raw:?} is not a positive integer"),
        )
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::numeric("APLINE_THREADS", e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    ExitCode::SUCCESS
                }
                ErrorKind::InvalidValue | ErrorKind::ValueValidation => {
                    report("InputParse", "InvalidValue", &e.to_string());
                    ExitCode::from(EXIT_DATA)
                }
                ErrorKind::InvalidSubcommand => {
                    report("UnknownSubcommand", "UnknownSubcommand", &e.to_string());
                    ExitCode::from(EXIT_USAGE)
                }
                _ => {
                    report("Usage", "Usage", &e.to_string());
                    ExitCode::from(EXIT_USAGE)
                }
            };
        }
    };
    match configure_threads().and_then(|()| commands::run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            report(f.kind(), &f.code, &f.message);
            ExitCode::from(if f.parse { EXIT_DATA } else { EXIT_NUMERIC })
        }
    }
}
