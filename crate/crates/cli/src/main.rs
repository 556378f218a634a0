use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use npa_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = execute(&cli);
    // each report goes out in a single write
    std::io::stdout().lock().write_all(out.stdout.as_bytes()).ok();
    std::io::stderr().lock().write_all(out.stderr.as_bytes()).ok();
    ExitCode::from(out.code as u8)
}
