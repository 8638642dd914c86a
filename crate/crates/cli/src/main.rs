use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use sepk_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = std::env::var("SEPK_SEED").ok();
    match run(&cli, seed.as_deref()) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(out.status)
        }
        Err(fail) => {
            let body = serde_json::to_string(&fail.report).expect("error report serializes");
            eprintln!("{body}");
            ExitCode::from(fail.status)
        }
    }
}
