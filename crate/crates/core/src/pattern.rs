//! Qualified-name and signature patterns with capture variables.
//!
//! A pattern is a `.`-separated sequence of elements:
//!
//! | text   | element                                         |
//! |--------|-------------------------------------------------|
//! | `name` | literal segment                                 |
//! | `*`    | exactly one segment                             |
//! | `{v}`  | exactly one segment, bound to capture `v`       |
//! | `..`   | zero or more segments                           |
//!
//! so `fb6.{c}..*` matches every type below `fb6` and binds its component
//! name to `c`. The `{v}` capture syntax is this crate's own notation; the
//! wildcard forms follow the familiar pointcut conventions. Wildcards never
//! match part of a segment.
//!
//! Captures from several patterns share one [`Binding`], and [`Constraint`]s
//! relate them. A [`DependencyRule`] combines a caller pattern, a callee
//! signature pattern and constraints with existential semantics: a call
//! violates the rule if any joint binding satisfies every constraint.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("invalid pattern `{pattern}`: {reason}")]
    Syntax { pattern: String, reason: String },
    #[error("constraint references unbound variable `{0}`")]
    UnboundVariable(String),
}

fn syntax(pattern: &str, reason: impl Into<String>) -> PatternError {
    PatternError::Syntax {
        pattern: pattern.to_string(),
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    Literal(String),
    AnySeg,
    Capture(String),
    Ellipsis,
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Literal(s) => f.write_str(s),
            Element::AnySeg => f.write_str("*"),
            Element::Capture(v) => write!(f, "{{{v}}}"),
            Element::Ellipsis => Ok(()),
        }
    }
}

/// Capture variable assignments; ordered, so sets of bindings have a
/// canonical order.
pub type Binding = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QNamePattern {
    elements: Vec<Element>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_' || c == '$')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '$')
}

fn parse_element(pattern: &str, seg: &str) -> Result<Element, PatternError> {
    if seg == "*" {
        return Ok(Element::AnySeg);
    }
    if let Some(inner) = seg.strip_prefix('{') {
        let var = inner
            .strip_suffix('}')
            .ok_or_else(|| syntax(pattern, format!("unterminated capture `{seg}`")))?;
        if !is_identifier(var) {
            return Err(syntax(pattern, format!("malformed capture `{seg}`")));
        }
        return Ok(Element::Capture(var.to_string()));
    }
    if seg.contains(['{', '}']) {
        return Err(syntax(pattern, format!("malformed capture `{seg}`")));
    }
    if seg.contains('*') {
        return Err(syntax(
            pattern,
            format!("`*` must stand for a whole segment, not part of `{seg}`"),
        ));
    }
    if !is_identifier(seg) {
        return Err(syntax(pattern, format!("invalid segment `{seg}`")));
    }
    Ok(Element::Literal(seg.to_string()))
}

impl QNamePattern {
    pub fn parse(text: &str) -> Result<Self, PatternError> {
        if text.is_empty() {
            return Err(syntax(text, "empty pattern"));
        }
        let mut elements = Vec::new();
        let mut rest = text;
        let mut at_start = true;
        loop {
            let dots = rest.len() - rest.trim_start_matches('.').len();
            rest = &rest[dots..];
            let at_end = rest.is_empty();
            match dots {
                0 => debug_assert!(at_start || at_end),
                1 if at_start || at_end => return Err(syntax(text, "empty segment")),
                1 => {}
                2 => elements.push(Element::Ellipsis),
                _ => return Err(syntax(text, "adjacent `..`")),
            }
            if at_end {
                break;
            }
            let len = rest.find('.').unwrap_or(rest.len());
            elements.push(parse_element(text, &rest[..len])?);
            rest = &rest[len..];
            at_start = false;
        }
        Ok(Self { elements })
    }

    pub fn from_elements(elements: Vec<Element>) -> Result<Self, PatternError> {
        let pattern = Self { elements };
        if pattern.elements.is_empty() {
            return Err(syntax("", "empty pattern"));
        }
        if pattern
            .elements
            .windows(2)
            .any(|w| w[0] == Element::Ellipsis && w[1] == Element::Ellipsis)
        {
            return Err(syntax(&pattern.to_string(), "adjacent `..`"));
        }
        Ok(pattern)
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// Names of the capture variables, in order of first appearance.
    pub fn variables(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for e in &self.elements {
            if let Element::Capture(v) = e {
                if !seen.contains(&v.as_str()) {
                    seen.push(v.as_str());
                }
            }
        }
        seen
    }

    /// Every extension of `seed` under which the pattern matches all of
    /// `name`. Empty means no match.
    pub fn match_qname(&self, name: &str, seed: &Binding) -> BTreeSet<Binding> {
        let segments: Vec<&str> = name.split('.').collect();
        let mut out = BTreeSet::new();
        let mut binding = seed.clone();
        self.search(0, &segments, &mut binding, &mut |b| {
            out.insert(b.clone());
            false
        });
        out
    }

    /// Whether the pattern matches `name` under some binding. Stops at the
    /// first match.
    pub fn matches(&self, name: &str) -> bool {
        let segments: Vec<&str> = name.split('.').collect();
        self.matches_segments(&segments)
    }

    /// [`matches`](Self::matches) on a name already split into segments.
    pub fn matches_segments(&self, segments: &[&str]) -> bool {
        self.search(0, segments, &mut Binding::new(), &mut |_| true)
    }

    /// Depth-first over all ways to match; `found` returns true to stop.
    /// Returns whether the search was stopped.
    fn search(
        &self,
        at: usize,
        segments: &[&str],
        binding: &mut Binding,
        found: &mut dyn FnMut(&Binding) -> bool,
    ) -> bool {
        let Some(element) = self.elements.get(at) else {
            return segments.is_empty() && found(binding);
        };
        match element {
            Element::Ellipsis => (0..=segments.len())
                .any(|skip| self.search(at + 1, &segments[skip..], binding, found)),
            _ => {
                let Some((first, rest)) = segments.split_first() else {
                    return false;
                };
                match element {
                    Element::Literal(lit) if lit == first => {
                        self.search(at + 1, rest, binding, found)
                    }
                    Element::AnySeg => self.search(at + 1, rest, binding, found),
                    Element::Capture(var) => match binding.get(var) {
                        Some(bound) if bound == first => self.search(at + 1, rest, binding, found),
                        Some(_) => false,
                        None => {
                            binding.insert(var.clone(), first.to_string());
                            let stop = self.search(at + 1, rest, binding, found);
                            binding.remove(var);
                            stop
                        }
                    },
                    _ => false,
                }
            }
        }
    }

    /// Replaces every capture bound in `binding` with its value as a literal.
    pub fn substitute(&self, binding: &Binding) -> QNamePattern {
        let elements = self
            .elements
            .iter()
            .map(|e| match e {
                Element::Capture(v) => binding
                    .get(v)
                    .map(|val| Element::Literal(val.clone()))
                    .unwrap_or_else(|| e.clone()),
                other => other.clone(),
            })
            .collect();
        QNamePattern { elements }
    }
}

impl fmt::Display for QNamePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements.iter().enumerate() {
            let prev_ellipsis = i > 0 && self.elements[i - 1] == Element::Ellipsis;
            if *e == Element::Ellipsis {
                f.write_str("..")?;
            } else {
                if i > 0 && !prev_ellipsis {
                    f.write_str(".")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for QNamePattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MemberPattern {
    Literal(String),
    AnySeg,
    Capture(String),
}

/// `type.member(..)`, e.g. `fb6.*.db.*.*(..)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignaturePattern {
    pub type_pattern: QNamePattern,
    pub member_pattern: MemberPattern,
}

impl SignaturePattern {
    pub fn new(type_pattern: QNamePattern, member_pattern: MemberPattern) -> Self {
        Self {
            type_pattern,
            member_pattern,
        }
    }

    /// Parses `<type pattern>.<member>(..)`. Only the `(..)` argument
    /// pattern is supported.
    pub fn parse(text: &str) -> Result<Self, PatternError> {
        let body = text
            .strip_suffix("(..)")
            .ok_or_else(|| syntax(text, "signature must end in `(..)`"))?;
        let (type_text, member) = body
            .rsplit_once('.')
            .ok_or_else(|| syntax(text, "missing member after type pattern"))?;
        // In `a..m(..)` the dot before the member belongs to the ellipsis.
        let type_text = if type_text.ends_with('.') {
            &body[..type_text.len() + 1]
        } else {
            type_text
        };
        let member_pattern = match parse_element(text, member)? {
            Element::Literal(s) => MemberPattern::Literal(s),
            Element::AnySeg => MemberPattern::AnySeg,
            Element::Capture(v) => MemberPattern::Capture(v),
            Element::Ellipsis => unreachable!("a single segment is never an ellipsis"),
        };
        Ok(Self {
            type_pattern: QNamePattern::parse(type_text)?,
            member_pattern,
        })
    }

    pub fn match_signature(
        &self,
        callee_type_qname: &str,
        callee_method_name: &str,
        seed: &Binding,
    ) -> BTreeSet<Binding> {
        self.type_pattern
            .match_qname(callee_type_qname, seed)
            .into_iter()
            .filter_map(|mut b| match &self.member_pattern {
                MemberPattern::Literal(l) => (l == callee_method_name).then_some(b),
                MemberPattern::AnySeg => Some(b),
                MemberPattern::Capture(v) => match b.get(v) {
                    Some(bound) => (bound == callee_method_name).then_some(b),
                    None => {
                        b.insert(v.clone(), callee_method_name.to_string());
                        Some(b)
                    }
                },
            })
            .collect()
    }
}

impl fmt::Display for SignaturePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let member = match &self.member_pattern {
            MemberPattern::Literal(s) => s.clone(),
            MemberPattern::AnySeg => "*".to_string(),
            MemberPattern::Capture(v) => format!("{{{v}}}"),
        };
        let ty = self.type_pattern.to_string();
        if ty.ends_with("..") {
            write!(f, "{ty}{member}(..)")
        } else {
            write!(f, "{ty}.{member}(..)")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    NotEqual(String, String),
    Equal(String, String),
    InSet(String, BTreeSet<String>),
    NotInSet(String, BTreeSet<String>),
}

impl Constraint {
    pub fn variables(&self) -> Vec<&str> {
        match self {
            Constraint::NotEqual(a, b) | Constraint::Equal(a, b) => vec![a, b],
            Constraint::InSet(v, _) | Constraint::NotInSet(v, _) => vec![v],
        }
    }

    fn holds(&self, b: &Binding) -> Result<bool, PatternError> {
        let get = |v: &String| {
            b.get(v)
                .ok_or_else(|| PatternError::UnboundVariable(v.clone()))
        };
        Ok(match self {
            Constraint::NotEqual(x, y) => get(x)? != get(y)?,
            Constraint::Equal(x, y) => get(x)? == get(y)?,
            Constraint::InSet(v, set) => set.contains(get(v)?),
            Constraint::NotInSet(v, set) => !set.contains(get(v)?),
        })
    }
}

/// Conjunction of `constraints` under `binding`.
pub fn satisfies(binding: &Binding, constraints: &[Constraint]) -> Result<bool, PatternError> {
    for c in constraints {
        if !c.holds(binding)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// "Code within `within` must not call `call`, whenever `constraints` hold."
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyRule {
    pub within: QNamePattern,
    pub call: SignaturePattern,
    pub constraints: Vec<Constraint>,
}

impl DependencyRule {
    /// Fails with [`PatternError::UnboundVariable`] if a constraint names a
    /// variable that neither pattern captures.
    pub fn new(
        within: QNamePattern,
        call: SignaturePattern,
        constraints: Vec<Constraint>,
    ) -> Result<Self, PatternError> {
        let mut vars: BTreeSet<&str> = within.variables().into_iter().collect();
        vars.extend(call.type_pattern.variables());
        if let MemberPattern::Capture(v) = &call.member_pattern {
            vars.insert(v);
        }
        for c in &constraints {
            if let Some(v) = c.variables().into_iter().find(|v| !vars.contains(v)) {
                return Err(PatternError::UnboundVariable(v.to_string()));
            }
        }
        Ok(Self {
            within,
            call,
            constraints,
        })
    }

    /// The first (in canonical order) joint binding under which the call
    /// from `caller_type` to `callee_type.callee_method` violates the rule.
    pub fn violation(
        &self,
        caller_type: &str,
        callee_type: &str,
        callee_method: &str,
    ) -> Result<Option<Binding>, PatternError> {
        for seed in self.within.match_qname(caller_type, &Binding::new()) {
            for joint in self.call.match_signature(callee_type, callee_method, &seed) {
                if satisfies(&joint, &self.constraints)? {
                    return Ok(Some(joint));
                }
            }
        }
        Ok(None)
    }
}
