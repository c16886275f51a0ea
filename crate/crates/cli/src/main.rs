use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use sigperm_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Err(e), _) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
        (Ok(()), Err(e)) => {
            eprintln!("error: write failed: {e}");
            ExitCode::FAILURE
        }
    }
}
