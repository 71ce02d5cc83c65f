mod commands;
mod config;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use commands::{CliError, Outcome};
use config::{parse_enum, CommonArgs, ExportObject, Format, RunConfig, Suite};

#[derive(Parser)]
#[command(
    name = "qverma",
    version,
    about = "Exact checks for quantum Verma modules and braided orbit algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Decompose the tensor square of the adjoint module.
    Decompose {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Build and check the braiding on the tensor square.
    Braiding {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Specialize to an orbit algebra and check it.
    Orbit {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Write operators, ideals or braidings as JSON.
    Export {
        #[arg(long, value_enum)]
        object: Option<ExportObject>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn write_output(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Compute(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(out: &Outcome, format: Format, elapsed_ms: u128) -> String {
    match format {
        Format::Json => {
            let value = json!({
                "command": out.command,
                "config": out.config,
                "passed": out.passed(),
                "reports": out.reports,
                "data": out.data,
                "elapsed_ms": elapsed_ms,
            });
            qverma::export::to_json(&value)
        }
        Format::Text => {
            let mut s = String::new();
            for r in &out.reports {
                s.push_str(&r.to_text());
                if !s.ends_with('\n') {
                    s.push('\n');
                }
            }
            for t in &out.tables {
                s.push_str(t);
            }
            s.push_str(if out.passed() {
                "ALL CHECKS PASSED\n"
            } else {
                "SOME CHECKS FAILED\n"
            });
            s
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let start = Instant::now();
    let common = match &cli.command {
        Command::Verify { common, .. }
        | Command::Decompose { common }
        | Command::Braiding { common }
        | Command::Orbit { common }
        | Command::Export { common, .. } => common,
    };
    let (cfg, file) = common.resolve()?;
    let outcome = match &cli.command {
        Command::Verify { suite, .. } => {
            let suite = match (suite, file.get("suite")) {
                (Some(s), _) => *s,
                (None, Some(s)) => parse_enum("suite", s)?,
                (None, None) => Suite::Uq,
            };
            commands::verify(&cfg, suite)?
        }
        Command::Decompose { .. } => commands::decompose_cmd(&cfg)?,
        Command::Braiding { .. } => commands::braiding_cmd(&cfg)?,
        Command::Orbit { .. } => commands::orbit_cmd(&cfg)?,
        Command::Export { object, .. } => {
            let object = match (object, file.get("object")) {
                (Some(o), _) => *o,
                (None, Some(o)) => parse_enum("object", o)?,
                (None, None) => ExportObject::Intertwiner,
            };
            if common.format.is_some() && cfg.format == Format::Text {
                return Err(CliError::Config("export writes JSON only".into()));
            }
            let value = commands::export_cmd(&cfg, object)?;
            write_output(&cfg, &qverma::export::to_json(&value))?;
            return Ok(true);
        }
    };
    let text = render(&outcome, cfg.format, start.elapsed().as_millis());
    write_output(&cfg, &text)?;
    Ok(outcome.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Config(msg)) => {
            eprintln!("configuration error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
