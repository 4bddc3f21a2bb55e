use std::process::ExitCode;

use clap::Parser;

use wpslab_cli::args::{Cli, Command};
use wpslab_cli::commands::{run, Status};
use wpslab_cli::render;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let command_line = std::iter::once("wpslab".to_string())
        .chain(std::env::args().skip(1))
        .collect::<Vec<_>>()
        .join(" ");
    let outcome = match run(&cli, command_line) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Status::Usage.code());
        }
    };
    let json = outcome.document.to_json();
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{json}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(Status::Failed.code());
        }
    }
    if cli.json {
        println!("{json}");
    } else {
        let verbose = matches!(cli.command, Command::Search { verbose: true, .. });
        print!("{}", render::text(&outcome.document, verbose));
    }
    ExitCode::from(outcome.status.code())
}
