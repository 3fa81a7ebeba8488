//! Static checks for MiniJ sources: mutator naming, layered architecture,
//! exception declaration and message templates; plus a simulator for
//! keyed, parameterized exception chains.
//!
//! The pipeline is [`minij::parse_unit`] → [`minij::extract_facts_with`] →
//! [`rules::run_all`]. The [`pattern`] module holds the qualified-name
//! pattern language the architecture rules are built on, and [`diag`] the
//! exception model and its renderer.

pub mod diag;
pub mod minij;
pub mod pattern;
pub mod rules;

pub use diag::{
    render_chain, render_message, CallTrace, ExcValue, Frame, FrameArg, MessageCatalog,
};
pub use minij::{
    extract_facts, extract_facts_with, parse_unit, CompilationUnit, FactOptions, Facts,
    SourceLocation, SyntaxError,
};
pub use pattern::{Binding, Constraint, PatternError, QNamePattern, SignaturePattern};
pub use rules::{
    run_all, ConfigError, Finding, Report, RuleConfig, RuleId, Severity, SeverityLevel,
};
