use std::process::ExitCode;

use clap::Parser;
use vplume::cli::Args;

const USAGE_ERROR: u8 = 2;

fn main() -> ExitCode {
    let args = Args::parse();
    let manifest = match args.manifest() {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE_ERROR);
        }
    };
    match vplume::run(&manifest) {
        Ok(summary) => {
            let failed = summary.failures();
            if failed > 0 {
                eprintln!("{failed} of {} file(s) failed", summary.results.len());
            }
            ExitCode::from(summary.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}
