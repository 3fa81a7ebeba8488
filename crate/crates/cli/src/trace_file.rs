//! Trace and catalog files for `simulate`.

use std::collections::BTreeMap;
use std::path::Path;

use convlint_core::diag::{CallTrace, ExcValue, Frame, FrameArg, MessageCatalog};
use serde::Deserialize;
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct TraceFile {
    #[serde(default)]
    hierarchy: BTreeMap<String, String>,
    frames: Vec<FrameFile>,
    raise_frame: usize,
    raised: RaisedFile,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct FrameFile {
    method: String,
    sig: String,
    #[serde(default)]
    args: Vec<ArgFile>,
    #[serde(default)]
    throws: Vec<String>,
    #[serde(default)]
    wrap: bool,
    /// The method may return null.
    #[serde(default)]
    nullable: bool,
    /// The simulated execution returned null.
    #[serde(default)]
    returned_null: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArgFile {
    name: String,
    #[serde(rename = "type")]
    type_text: String,
    // Absent and `null` both mean a null argument.
    #[serde(default)]
    value: Value,
    #[serde(default)]
    nullable: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RaisedFile {
    key: String,
    #[serde(default)]
    params: Vec<Value>,
}

/// Text of a JSON value as it appears in messages: strings unquoted,
/// other scalars and structures in their JSON form.
fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// A parsed trace, plus which frames returned null.
#[derive(Debug, Clone)]
pub struct Simulation {
    pub trace: CallTrace,
    pub returned_null: Vec<bool>,
}

pub fn parse_trace(text: &str) -> Result<Simulation, String> {
    let file: TraceFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let returned_null = file.frames.iter().map(|f| f.returned_null).collect();
    let frames = file
        .frames
        .into_iter()
        .map(|f| Frame {
            method_qname: f.method,
            simple_sig: f.sig,
            args: f
                .args
                .into_iter()
                .map(|a| FrameArg {
                    name: a.name,
                    type_text: a.type_text,
                    value: (!a.value.is_null()).then(|| render_value(&a.value)),
                    nullable: a.nullable,
                })
                .collect(),
            method_nullable: f.nullable,
            declared_throws: f.throws,
            wrap_enabled: f.wrap,
        })
        .collect();
    let raised = ExcValue::new(
        file.raised.key,
        file.raised.params.iter().map(render_value).collect(),
    );
    let trace = CallTrace::new(frames, file.raise_frame, raised, file.hierarchy)
        .map_err(|e| e.to_string())?;
    Ok(Simulation {
        trace,
        returned_null,
    })
}

pub fn load_trace(path: &Path) -> Result<Simulation, CliError> {
    let text = read(path)?;
    parse_trace(&text).map_err(|message| CliError::Input {
        path: path.display().to_string(),
        message,
    })
}

pub fn parse_catalog(text: &str) -> Result<MessageCatalog, String> {
    let entries: BTreeMap<String, String> =
        serde_json::from_str(text).map_err(|e| e.to_string())?;
    Ok(entries.into_iter().collect())
}

pub fn load_catalog(path: &Path) -> Result<MessageCatalog, CliError> {
    let text = read(path)?;
    parse_catalog(&text).map_err(|message| CliError::Input {
        path: path.display().to_string(),
        message,
    })
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}
