use std::fmt;
use std::str::FromStr;

use crate::diag::{render_message, ExcValue, MessageCatalog};
use crate::minij::SourceLocation;

use super::config::SeverityLevel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    Mut01,
    Mut02,
    Arch01,
    Arch02,
    Arch03,
    Exc01,
    Msg01,
    Msg02,
    /// A file that failed to parse.
    Parse,
}

impl RuleId {
    pub const ALL: [RuleId; 9] = [
        RuleId::Mut01,
        RuleId::Mut02,
        RuleId::Arch01,
        RuleId::Arch02,
        RuleId::Arch03,
        RuleId::Exc01,
        RuleId::Msg01,
        RuleId::Msg02,
        RuleId::Parse,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::Mut01 => "MUT01",
            RuleId::Mut02 => "MUT02",
            RuleId::Arch01 => "ARCH01",
            RuleId::Arch02 => "ARCH02",
            RuleId::Arch03 => "ARCH03",
            RuleId::Exc01 => "EXC01",
            RuleId::Msg01 => "MSG01",
            RuleId::Msg02 => "MSG02",
            RuleId::Parse => "PARSE",
        }
    }

    pub fn template(self) -> &'static str {
        match self {
            RuleId::Mut01 => "Illegal mutator call on an immutable reference",
            RuleId::Mut02 => "Field {0} replaced in non-mutator method {1}",
            RuleId::Arch01 => "Do not call the db-layer directly",
            RuleId::Arch02 => "Component {0} must not call component {1}",
            RuleId::Arch03 => "Do not call a product component from the service component",
            RuleId::Exc01 => "Exception {0} thrown but not declared in the throws clause of {1}",
            RuleId::Msg01 => {
                "Throw site passes {0} message parameters but template of {1} requires {2}"
            }
            RuleId::Msg02 => {
                "Throw site passes {0} message parameters but template of {1} requires only {2}"
            }
            RuleId::Parse => "Syntax error: expected {0}, found {1}",
        }
    }

    pub fn default_severity(self) -> SeverityLevel {
        match self {
            RuleId::Msg02 => SeverityLevel::Warning,
            _ => SeverityLevel::Error,
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown rule id `{s}`"))
    }
}

/// Rule id to template, the catalog findings are rendered with.
pub fn rule_catalog() -> MessageCatalog {
    RuleId::ALL
        .into_iter()
        .map(|r| (r.as_str(), r.template()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }

    /// `None` for [`SeverityLevel::Off`].
    pub fn from_level(level: SeverityLevel) -> Option<Self> {
        match level {
            SeverityLevel::Error => Some(Severity::Error),
            SeverityLevel::Warning => Some(Severity::Warning),
            SeverityLevel::Off => None,
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub rule_id: RuleId,
    pub severity: Severity,
    pub location: SourceLocation,
    /// Always the rule id; findings use the same key/parameter model as
    /// exceptions.
    pub message_key: String,
    pub params: Vec<String>,
    pub message: String,
}

impl Finding {
    /// Builds a finding at the rule's default severity, rendering the message
    /// from the rule catalog.
    pub fn new(rule_id: RuleId, location: SourceLocation, params: Vec<String>) -> Self {
        let message_key = rule_id.as_str().to_string();
        let mut catalog = MessageCatalog::new();
        catalog.insert(rule_id.as_str(), rule_id.template());
        let message = render_message(
            &catalog,
            &ExcValue::new(message_key.clone(), params.clone()),
        );
        let severity = Severity::from_level(rule_id.default_severity()).unwrap_or(Severity::Error);
        Self {
            rule_id,
            severity,
            location,
            message_key,
            params,
            message,
        }
    }

    /// A syntax error reported as a finding.
    pub fn parse_error(err: &crate::minij::SyntaxError) -> Self {
        Self::new(
            RuleId::Parse,
            err.location.clone(),
            vec![err.expected.clone(), err.found.clone()],
        )
    }

    /// `<file>:<line>:<col>: <severity> [<rule_id>] <message>`
    pub fn text_line(&self) -> String {
        format!(
            "{}:{}:{}: {} [{}] {}",
            self.location.file,
            self.location.line,
            self.location.column,
            self.severity,
            self.rule_id,
            self.message
        )
    }

    fn sort_key(&self) -> (&str, u32, u32, &str, &str) {
        (
            &self.location.file,
            self.location.line,
            self.location.column,
            self.rule_id.as_str(),
            &self.message,
        )
    }
}

/// Findings sorted by file, line, column and rule id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    findings: Vec<Finding>,
}

impl Report {
    pub fn new(mut findings: Vec<Finding>) -> Self {
        findings.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Self { findings }
    }

    pub fn findings(&self) -> &[Finding] {
        &self.findings
    }

    pub fn into_findings(self) -> Vec<Finding> {
        self.findings
    }

    pub fn count(&self, severity: Severity) -> usize {
        self.findings
            .iter()
            .filter(|f| f.severity == severity)
            .count()
    }

    pub fn error_count(&self) -> usize {
        self.count(Severity::Error)
    }

    pub fn warning_count(&self) -> usize {
        self.count(Severity::Warning)
    }

    pub fn len(&self) -> usize {
        self.findings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.findings.is_empty()
    }

    /// Merges two reports, keeping the sort order.
    pub fn merge(self, other: Report) -> Report {
        let mut all = self.findings;
        all.extend(other.findings);
        Report::new(all)
    }
}
