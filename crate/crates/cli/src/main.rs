mod args;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use recurlab::report::Report;
use serde::Serialize;

use args::{Cli, Format};

#[derive(Serialize)]
struct RunConfig<'a> {
    #[serde(flatten)]
    cli: &'a Cli,
    requested_digits: usize,
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let requested = cli.digits.map_or_else(recurlab::real::default_digits, |d| d as usize);
    let output = match run::run(&cli.command, requested) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let digits = output.digits.unwrap_or(requested);
    let config = RunConfig { cli: &cli, requested_digits: requested };
    let text = match cli.format {
        Format::Json => {
            let mut s = Report::new(digits, &config, &output.result).to_json();
            s.push('\n');
            s
        }
        Format::Csv => {
            let echo = serde_json::to_string(&config).expect("config serializes");
            format!(
                "# version={}\n# precision_digits={digits}\n# config={echo}\n{}",
                recurlab::report::VERSION,
                output.csv
            )
        }
    };
    match emit(&cli, &text) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: cannot write report: {e}");
            ExitCode::from(1)
        }
    }
}
