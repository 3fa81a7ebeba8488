//! The JSON rule configuration file.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use convlint_core::rules::{ConfigError, NameGlob, RuleConfig, SeverityLevel};
use serde_json::Value;

use crate::CliError;

pub fn load_config(path: &Path) -> Result<RuleConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text).map_err(|e| CliError::Config {
        path: path.display().to_string(),
        error: e,
    })
}

/// Parses configuration text. Missing fields keep their defaults; unknown
/// fields are rejected.
pub fn parse_config(text: &str) -> Result<RuleConfig, ConfigError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| ConfigError::new("<root>", format!("not valid JSON: {e}")))?;
    let Value::Object(fields) = value else {
        return Err(ConfigError::new("<root>", "expected an object"));
    };
    let mut cfg = RuleConfig::default();
    for (field, value) in &fields {
        match field.as_str() {
            "root_package" => cfg.root_package = string(field, value)?,
            "layers" => cfg.layers = strings(field, value)?,
            "service_components" => cfg.service_components = string_set(field, value)?,
            "mutable_suffix" => cfg.mutable_suffix = string(field, value)?,
            "mutator_method_patterns" => {
                cfg.mutator_method_patterns = strings(field, value)?
                    .iter()
                    .map(|p| {
                        p.parse::<NameGlob>()
                            .map_err(|m| ConfigError::new(field, m))
                    })
                    .collect::<Result<_, _>>()?
            }
            "exc_base_types" => cfg.exc_base_types = string_set(field, value)?,
            "failure_base_types" => cfg.failure_base_types = string_set(field, value)?,
            "throw_helper_names" => cfg.throw_helper_names = string_set(field, value)?,
            "severities" => cfg.severities = severities(field, value)?,
            _ => return Err(ConfigError::new(field, "unknown field")),
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn string(field: &str, value: &Value) -> Result<String, ConfigError> {
    value
        .as_str()
        .map(str::to_string)
        .ok_or_else(|| ConfigError::new(field, "expected a string"))
}

fn strings(field: &str, value: &Value) -> Result<Vec<String>, ConfigError> {
    let Value::Array(items) = value else {
        return Err(ConfigError::new(field, "expected an array of strings"));
    };
    items
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| ConfigError::new(field, "expected an array of strings"))
        })
        .collect()
}

fn string_set(field: &str, value: &Value) -> Result<BTreeSet<String>, ConfigError> {
    Ok(strings(field, value)?.into_iter().collect())
}

fn severities(field: &str, value: &Value) -> Result<BTreeMap<String, SeverityLevel>, ConfigError> {
    let Value::Object(map) = value else {
        return Err(ConfigError::new(
            field,
            "expected an object of rule id to severity",
        ));
    };
    map.iter()
        .map(|(rule, level)| {
            let level = level
                .as_str()
                .ok_or_else(|| {
                    ConfigError::new(field, format!("severity of `{rule}` must be a string"))
                })?
                .parse::<SeverityLevel>()
                .map_err(|m| ConfigError::new(field, m))?;
            Ok((rule.clone(), level))
        })
        .collect()
}
