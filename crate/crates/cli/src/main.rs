use std::process::ExitCode;

use clap::Parser;
use quadfermat_cli::args::Cli;
use quadfermat_cli::report::error_kind_name;
use quadfermat_cli::run::exit_code_for_error;
use quadfermat_cli::{run, OutputFormat};

fn main() -> ExitCode {
    let (command, args) = Cli::parse().command.into_parts();
    let json = args.json;
    let cfg = match args.into_config(command) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            if json {
                let doc = serde_json::json!({
                    "command": command,
                    "error": { "kind": error_kind_name(e.kind()), "message": e.to_string() },
                    "exit_code": exit_code_for_error(&e),
                });
                println!("{doc:#}");
            }
            return ExitCode::from(exit_code_for_error(&e) as u8);
        }
    };
    let report = run(&cfg);
    if let Some(e) = &report.error {
        eprintln!("error ({}): {}", e.kind, e.message);
    }
    match cfg.output {
        OutputFormat::Json => println!("{}", report.to_json()),
        OutputFormat::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(report.exit_code as u8)
}
