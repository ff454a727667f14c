use std::process::ExitCode;

use clap::Parser;
use tgla_cli::run::{run, Args, Command};

fn write(path: &std::path::Path, text: &str) -> Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let out = match run(&args) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let (Command::Constants, Some(table)) = (&args.command, &out.export) {
        let text = serde_json::to_string_pretty(table).expect("tables serialize") + "\n";
        if let Err(e) = write(&args.export, &text) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let text = out.report.to_json();
    match &args.out {
        Some(p) => {
            if let Err(e) = write(p, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    for (suite, ms) in &out.timings {
        eprintln!("{suite}: {ms} ms");
    }
    let s = &out.report.summary;
    eprintln!("{} checks: {} pass, {} fail, {} vacuous", s.total, s.pass, s.fail, s.vacuous);
    if out.report.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
