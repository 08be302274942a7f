use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = qdom_cli::Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match qdom_cli::run(cli, &mut out) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(qdom_cli::exit::FAILURE as u8)
        }
    }
}
