use std::process::ExitCode;

use clap::Parser;
use fnr_cli::{thread_cap, Cli, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version come through here as well
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(CliError::EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = thread_cap(std::env::var("FNR_THREADS").ok().as_deref()).and_then(|cap| {
        if let Some(n) = cap {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| CliError::Usage(format!("FNR_THREADS: {e}")))?;
        }
        fnr_cli::run(cli, &mut std::io::stdout().lock())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fnr: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
