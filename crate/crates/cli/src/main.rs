use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use mixbraid_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli.opts.to_config().and_then(|cfg| run(cli.command, &cfg));
    match result {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.output.as_bytes());
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("mixbraid: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
