mod args;
mod commands;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use diomon::EquationSpec;
use serde_json::{json, Value};

use args::{CarryCommand, Cli, Command, Format};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] diomon::Error),
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("Apéry methods disagree: {0}")]
    MethodMismatch(String),
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.code(),
            CliError::Io { .. } => "Io",
            CliError::MethodMismatch(_) => "MethodMismatch",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = commands::name(&cli.command);
    let reads_file = matches!(cli.command, Command::Carry(CarryCommand::Check { spec: Some(_), .. }));
    if cli.eq.is_none() && !reads_file {
        Cli::command()
            .error(ErrorKind::MissingRequiredArgument, "--eq <A1,...,AR> is required")
            .exit();
    }

    let start = Instant::now();
    let spec = cli.eq.as_deref().map(EquationSpec::normalize).transpose();
    let outcome = spec
        .as_ref()
        .map_err(|e| CliError::Domain(e.clone()))
        .and_then(|spec| commands::run(&cli.command, spec.as_ref(), cli.guard));
    let elapsed = start.elapsed();

    let equation = json!(cli.eq);
    let normalized = match &spec {
        Ok(Some(s)) => json!(s.normalized()),
        _ => Value::Null,
    };
    let elapsed_ms = if cli.no_timing {
        Value::Null
    } else {
        json!(elapsed.as_secs_f64() * 1e3)
    };

    let mut stdout = io::stdout().lock();
    let print_json = |out: &mut io::StdoutLock, doc: Value| {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&doc).expect("document serializes")
        )
    };
    let written = match (outcome, cli.format) {
        (Ok(report), Format::Json) => {
            let doc = json!({
                "equation": equation,
                "normalized": normalized,
                "command": command,
                "result": report.result,
                "elapsed_ms": elapsed_ms,
            });
            print_json(&mut stdout, doc).map(|_| report.ok)
        }
        (Ok(report), Format::Text) => {
            let header = match &spec {
                Ok(Some(s)) => format!("{s}\n"),
                _ => String::new(),
            };
            write!(stdout, "{header}{}", report.text).map(|_| report.ok)
        }
        (Err(e), Format::Json) => {
            let doc = json!({
                "equation": equation,
                "normalized": normalized,
                "command": command,
                "error": { "code": e.code(), "message": e.to_string() },
            });
            print_json(&mut stdout, doc).map(|_| false)
        }
        (Err(e), Format::Text) => {
            eprintln!("error[{}]: {e}", e.code());
            Ok(false)
        }
    };
    match written {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(_) => ExitCode::FAILURE,
    }
}
