use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use harmonium_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.run.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let report = match harmonium_cli::run(&cli, &mut |w| eprintln!("warning: {w}")) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let text = if cli.run.json {
        report.to_json()
    } else {
        report.to_string()
    };
    let written = match &cli.run.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(2);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
