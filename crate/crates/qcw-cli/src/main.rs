use std::process::ExitCode;

use clap::Parser;

use qcw_cli::cli::{execute, Cli};
use qcw_cli::report::Status;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let echo = format!("qcw {}", args.join(" "));
    let report = execute(&cli, &echo);
    let text = report.to_string();
    match &cli.report {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(Status::Error.exit_code());
            }
        }
        None => print!("{text}"),
    }
    if report.status == Status::Error {
        if let Some(msg) = text.lines().find_map(|l| l.trim().strip_prefix("message: ")) {
            eprintln!("error: {msg}");
        }
    }
    ExitCode::from(report.status.exit_code())
}
