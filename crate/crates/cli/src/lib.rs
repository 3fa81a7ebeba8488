//! The `convlint` command line: `check` runs the rules over MiniJ sources,
//! `simulate` replays an exception trace, `rules` lists the rule catalog.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use convlint_core::diag::{
    check_null_args, check_null_return, propagate, render_message, ExcValue, MessageCatalog,
};
use convlint_core::rules::{ConfigError, Finding, Report, RuleConfig, RuleId};
use serde::Serialize;
use thiserror::Error;

pub mod check;
pub mod config_file;
pub mod trace_file;

pub use config_file::{load_config, parse_config};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FINDINGS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read `{path}`: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {error}")]
    Config { path: String, error: ConfigError },
    #[error("{path}: {message}")]
    Input { path: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "convlint",
    version,
    about = "Convention checker for MiniJ sources"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check MiniJ sources (files or directories, searched recursively).
    Check {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Propagate the exception of a trace file and render the result.
    Simulate {
        trace: PathBuf,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the built-in rules with their templates and default severities.
    Rules {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = writeln!(err, "convlint: {}", usage_line(&e.to_string()));
            return EXIT_USAGE;
        }
    };
    let result = match cli.command {
        Command::Check {
            inputs,
            config,
            format,
        } => cmd_check(&inputs, config.as_deref(), format, out),
        Command::Simulate {
            trace,
            catalog,
            format,
        } => cmd_simulate(&trace, catalog.as_deref(), format, out),
        Command::Rules { format } => cmd_rules(format, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "convlint: {}", usage_line(&e.to_string()));
            EXIT_USAGE
        }
    }
}

/// First non-empty line of a message, without clap's `error: ` prefix.
fn usage_line(message: &str) -> String {
    let line = message
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .unwrap_or("usage error");
    line.strip_prefix("error: ").unwrap_or(line).to_string()
}

fn io_error(e: io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source: e,
    }
}

#[derive(Serialize)]
struct JsonFinding<'a> {
    file: &'a str,
    line: u32,
    col: u32,
    rule: &'a str,
    severity: &'a str,
    key: &'a str,
    params: &'a [String],
    message: &'a str,
}

pub fn finding_json(f: &Finding) -> String {
    serde_json::to_string(&JsonFinding {
        file: &f.location.file,
        line: f.location.line,
        col: f.location.column,
        rule: f.rule_id.as_str(),
        severity: f.severity.as_str(),
        key: &f.message_key,
        params: &f.params,
        message: &f.message,
    })
    .expect("findings serialize")
}

pub fn summary_line(report: &Report) -> String {
    if report.is_empty() {
        "0 findings".to_string()
    } else {
        format!(
            "{} findings ({} errors, {} warnings)",
            report.len(),
            report.error_count(),
            report.warning_count()
        )
    }
}

pub fn write_report(report: &Report, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Text => {
            for f in report.findings() {
                writeln!(out, "{}", f.text_line())?;
            }
            writeln!(out, "{}", summary_line(report))
        }
        Format::Json => {
            for f in report.findings() {
                writeln!(out, "{}", finding_json(f))?;
            }
            Ok(())
        }
    }
}

fn cmd_check(
    inputs: &[PathBuf],
    config: Option<&std::path::Path>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let cfg = match config {
        Some(path) => load_config(path)?,
        None => RuleConfig::default(),
    };
    let files = check::discover(inputs)?;
    let report = check::check_files(&files, &cfg)?;
    write_report(&report, format, out).map_err(io_error)?;
    Ok(if report.error_count() > 0 {
        EXIT_FINDINGS
    } else {
        EXIT_OK
    })
}

#[derive(Serialize)]
struct JsonExc<'a> {
    key: &'a str,
    params: &'a [String],
    message: String,
}

fn json_exc<'a>(catalog: &MessageCatalog, e: &'a ExcValue) -> JsonExc<'a> {
    JsonExc {
        key: &e.key,
        params: &e.params,
        message: render_message(catalog, e),
    }
}

fn cmd_simulate(
    trace: &std::path::Path,
    catalog: Option<&std::path::Path>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let sim = trace_file::load_trace(trace)?;
    let mut cat = MessageCatalog::builtin();
    if let Some(path) = catalog {
        cat.extend(trace_file::load_catalog(path)?);
    }
    let mut contract_failures = Vec::new();
    for (frame, returned_null) in sim.trace.frames().iter().zip(&sim.returned_null) {
        contract_failures.extend(check_null_args(frame));
        contract_failures.extend(check_null_return(frame, *returned_null));
    }
    let result = propagate(&sim.trace);
    match format {
        Format::Text => {
            for e in &contract_failures {
                writeln!(out, "{}", render_message(&cat, e)).map_err(io_error)?;
            }
            for (i, e) in result.chain().enumerate() {
                let prefix = if i == 0 { "" } else { "Caused by: " };
                writeln!(out, "{prefix}{}", render_message(&cat, e)).map_err(io_error)?;
            }
        }
        Format::Json => {
            let value = serde_json::json!({
                "contractFailures": contract_failures.iter().map(|e| json_exc(&cat, e)).collect::<Vec<_>>(),
                "chain": result.chain().map(|e| json_exc(&cat, e)).collect::<Vec<_>>(),
            });
            writeln!(out, "{value}").map_err(io_error)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_rules(format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    for rule in RuleId::ALL {
        let severity = rule.default_severity().as_str();
        let line = match format {
            Format::Text => format!("{:<7} {:<8} {}", rule.as_str(), severity, rule.template()),
            Format::Json => serde_json::json!({
                "rule": rule.as_str(),
                "severity": severity,
                "template": rule.template(),
            })
            .to_string(),
        };
        writeln!(out, "{line}").map_err(io_error)?;
    }
    Ok(EXIT_OK)
}
