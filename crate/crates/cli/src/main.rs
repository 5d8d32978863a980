use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use topk_hui_cli::args::Cli;
use topk_hui_cli::{run, CliError};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            match &e {
                CliError::Verification(msg) => {
                    // The report or diff goes to stdout; the verdict to stderr.
                    let (body, last) = msg.rsplit_once('\n').unwrap_or(("", msg));
                    let _ = writeln!(out, "{body}");
                    eprintln!("{last}");
                }
                _ => eprintln!("error: {e}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
