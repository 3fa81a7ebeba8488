use std::path::{Path, PathBuf};

use convlint_core::minij::{extract_facts_with, parse_unit, CompilationUnit, Pos, SyntaxError};
use convlint_core::rules::{apply_severities, run_all, Finding, Report, RuleConfig};
use rayon::prelude::*;
use walkdir::WalkDir;

use crate::CliError;

pub const SOURCE_EXTENSION: &str = "minij";

/// Every `.minij` file under `inputs`, sorted by path and without
/// duplicates. Files named directly are included whatever their extension.
pub fn discover(inputs: &[PathBuf]) -> Result<Vec<PathBuf>, CliError> {
    let mut files = Vec::new();
    for input in inputs {
        if input.is_file() {
            files.push(input.clone());
        } else if input.is_dir() {
            for entry in WalkDir::new(input).follow_links(true) {
                let entry = entry.map_err(|e| CliError::Io {
                    path: e.path().unwrap_or(input).display().to_string(),
                    source: e.into(),
                })?;
                let path = entry.path();
                if entry.file_type().is_file()
                    && path.extension().is_some_and(|ext| ext == SOURCE_EXTENSION)
                {
                    files.push(path.to_path_buf());
                }
            }
        } else {
            return Err(CliError::Usage(format!(
                "input `{}` does not exist",
                input.display()
            )));
        }
    }
    files.sort_by(|a, b| a.as_os_str().cmp(b.as_os_str()));
    files.dedup();
    Ok(files)
}

fn display_path(path: &Path) -> String {
    path.to_string_lossy().into_owned()
}

fn parse_file(path: &Path) -> Result<Result<CompilationUnit, SyntaxError>, CliError> {
    let file = display_path(path);
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: file.clone(),
        source,
    })?;
    Ok(match String::from_utf8(bytes) {
        Ok(text) => parse_unit(&text, &file),
        Err(_) => Err(SyntaxError::new(
            &file,
            Pos::new(1, 1),
            "UTF-8 text",
            "an invalid byte sequence",
        )),
    })
}

/// Parses `files` (in parallel), extracts facts from those that parse and
/// runs the rules. Syntax errors become PARSE findings.
pub fn check_files(files: &[PathBuf], cfg: &RuleConfig) -> Result<Report, CliError> {
    let parsed: Vec<_> = files
        .par_iter()
        .map(|f| parse_file(f))
        .collect::<Result<_, _>>()?;
    let mut units = Vec::new();
    let mut parse_findings = Vec::new();
    for result in parsed {
        match result {
            Ok(unit) => units.push(unit),
            Err(e) => parse_findings.push(Finding::parse_error(&e)),
        }
    }
    let facts = extract_facts_with(&units, &cfg.into());
    let report = run_all(&facts, cfg).map_err(|error| CliError::Config {
        path: "configuration".into(),
        error,
    })?;
    Ok(report.merge(apply_severities(parse_findings, cfg)))
}
