use std::process::ExitCode;

use clap::Parser;
use se2_cli::cli::{run, Cli};
use se2_cli::error::EXIT_USAGE;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("SE2_THREADS") {
        match v.parse::<usize>() {
            Ok(threads) if threads > 0 => {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global()
                    .expect("thread pool is configured once");
            }
            _ => {
                eprintln!("error: SE2_THREADS must be a positive integer, got `{v}`");
                return ExitCode::from(EXIT_USAGE as u8);
            }
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
