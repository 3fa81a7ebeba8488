//! The built-in rules: mutator convention (MUT01, MUT02), layered
//! architecture (ARCH01..03), undeclared exceptions (EXC01) and message
//! parameter arity (MSG01, MSG02).

mod checks;
pub mod config;
mod finding;

pub use checks::{
    apply_severities, check_component_isolation, check_field_assignments, check_layering,
    check_message_param_arity, check_mutator_calls, check_undeclared_exc_throws, is_mutator_name,
    run_all,
};
pub use config::{ConfigError, NameGlob, RuleConfig, SeverityLevel};
pub use finding::{rule_catalog, Finding, Report, RuleId, Severity};
