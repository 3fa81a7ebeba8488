//! Rule configuration and its defaults.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid configuration field `{field}`: {message}")]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

/// A glob over a single identifier: `*` may appear only at the start
/// and/or end (`*Mut`, `set*`, `*Dao*`, `*`, or a plain name).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NameGlob {
    text: String,
    core: String,
    any_prefix: bool,
    any_suffix: bool,
}

impl NameGlob {
    pub fn matches(&self, name: &str) -> bool {
        match (self.any_prefix, self.any_suffix) {
            (false, false) => name == self.core,
            (true, false) => name.ends_with(&self.core),
            (false, true) => name.starts_with(&self.core),
            (true, true) => name.contains(&self.core),
        }
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }
}

impl FromStr for NameGlob {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (any_prefix, rest) = match s.strip_prefix('*') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let (any_suffix, core) = match rest.strip_suffix('*') {
            Some(r) => (true, r),
            None => (false, rest),
        };
        if s.is_empty() {
            return Err("empty name pattern".into());
        }
        if core.contains('*') {
            return Err(format!("`*` is only allowed at the start or end of `{s}`"));
        }
        if !core
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '$')
        {
            return Err(format!("`{s}` is not an identifier pattern"));
        }
        Ok(Self {
            text: s.to_string(),
            core: core.to_string(),
            any_prefix,
            any_suffix: any_suffix && (!core.is_empty() || !any_prefix),
        })
    }
}

impl fmt::Display for NameGlob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeverityLevel {
    Error,
    Warning,
    Off,
}

impl SeverityLevel {
    pub fn as_str(self) -> &'static str {
        match self {
            SeverityLevel::Error => "error",
            SeverityLevel::Warning => "warning",
            SeverityLevel::Off => "off",
        }
    }
}

impl FromStr for SeverityLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "error" => Ok(SeverityLevel::Error),
            "warning" => Ok(SeverityLevel::Warning),
            "off" => Ok(SeverityLevel::Off),
            other => Err(format!(
                "unknown severity `{other}` (expected error, warning or off)"
            )),
        }
    }
}

impl fmt::Display for SeverityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleConfig {
    pub root_package: String,
    /// Top to bottom.
    pub layers: Vec<String>,
    pub service_components: BTreeSet<String>,
    pub mutable_suffix: String,
    pub mutator_method_patterns: Vec<NameGlob>,
    pub exc_base_types: BTreeSet<String>,
    pub failure_base_types: BTreeSet<String>,
    pub throw_helper_names: BTreeSet<String>,
    /// Overrides of the default severities, keyed by rule id. Keys are
    /// checked against the known rules by [`RuleConfig::validate`].
    pub severities: BTreeMap<String, SeverityLevel>,
}

fn strings<const N: usize>(items: [&str; N]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

impl Default for RuleConfig {
    fn default() -> Self {
        Self {
            root_package: "fb6".into(),
            layers: vec!["ui".into(), "lg".into(), "db".into()],
            service_components: strings(["service"]),
            mutable_suffix: "Mut".into(),
            mutator_method_patterns: ["*Mut", "set*"]
                .iter()
                .map(|p| p.parse().expect("default patterns are valid"))
                .collect(),
            exc_base_types: strings(["multex.Exc"]),
            failure_base_types: strings(["multex.Failure"]),
            throw_helper_names: strings(["throwNew", "create"]),
            severities: BTreeMap::new(),
        }
    }
}

fn is_segment(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_' || c == '$')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '$')
}

impl RuleConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !is_segment(&self.root_package) {
            return Err(ConfigError::new(
                "root_package",
                format!("`{}` is not a package segment", self.root_package),
            ));
        }
        if self.layers.is_empty() {
            return Err(ConfigError::new("layers", "must not be empty"));
        }
        let mut seen = BTreeSet::new();
        for layer in &self.layers {
            if !is_segment(layer) {
                return Err(ConfigError::new(
                    "layers",
                    format!("`{layer}` is not a package segment"),
                ));
            }
            if !seen.insert(layer) {
                return Err(ConfigError::new(
                    "layers",
                    format!("duplicate layer `{layer}`"),
                ));
            }
        }
        if let Some(bad) = self.service_components.iter().find(|c| !is_segment(c)) {
            return Err(ConfigError::new(
                "service_components",
                format!("`{bad}` is not a package segment"),
            ));
        }
        if self.mutable_suffix.is_empty() {
            return Err(ConfigError::new("mutable_suffix", "must not be empty"));
        }
        for id in self.severities.keys() {
            if super::RuleId::from_str(id).is_err() {
                return Err(ConfigError::new(
                    "severities",
                    format!("unknown rule id `{id}`"),
                ));
            }
        }
        Ok(())
    }

    pub fn severity_of(&self, rule: super::RuleId) -> SeverityLevel {
        self.severities
            .get(rule.as_str())
            .copied()
            .unwrap_or(rule.default_severity())
    }

    pub fn layer_index(&self, layer: &str) -> Option<usize> {
        self.layers.iter().position(|l| l == layer)
    }
}
