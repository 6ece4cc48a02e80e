use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gion_cli::{run, Cli, Output};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (stdout_text, status) = match run(&cli) {
        Ok(Output::Record(record)) => (record.render(cli.format), 0),
        Ok(Output::Document(text)) => (text, 0),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            let text = failure
                .record
                .map(|r| r.render(cli.format))
                .unwrap_or_default();
            (text, failure.code)
        }
    };
    let mut out = std::io::stdout().lock();
    if out
        .write_all(stdout_text.as_bytes())
        .and_then(|_| out.flush())
        .is_err()
    {
        return ExitCode::from(gion_cli::commands::EXIT_INTERNAL);
    }
    ExitCode::from(status)
}
