use std::collections::BTreeSet;

use crate::diag::required_arity;
use crate::minij::{Facts, ReceiverKind, TargetKind};
use crate::pattern::{
    Binding, Constraint, DependencyRule, Element, MemberPattern, QNamePattern, SignaturePattern,
};

use super::config::{ConfigError, RuleConfig};
use super::finding::{Finding, Report, RuleId, Severity};

pub fn is_mutator_name(name: &str, cfg: &RuleConfig) -> bool {
    cfg.mutator_method_patterns.iter().any(|g| g.matches(name))
}

/// MUT01: a mutator called on a reference whose name does not mark it
/// mutable.
pub fn check_mutator_calls(facts: &Facts, cfg: &RuleConfig) -> Vec<Finding> {
    facts
        .call_facts
        .iter()
        .filter(|c| is_mutator_name(&c.callee_method_name, cfg))
        .filter(|c| {
            let mutable = match c.receiver_kind {
                ReceiverKind::This => {
                    c.caller.method_is_constructor || is_mutator_name(&c.caller.method_name, cfg)
                }
                ReceiverKind::SimpleName | ReceiverKind::FieldOfThis => c
                    .receiver_name
                    .as_deref()
                    .is_some_and(|n| n.ends_with(&cfg.mutable_suffix)),
                ReceiverKind::NewExpr => true,
                ReceiverKind::StaticType | ReceiverKind::CallResult | ReceiverKind::Unresolved => {
                    true
                }
            };
            !mutable
        })
        .map(|c| Finding::new(RuleId::Mut01, c.location.clone(), vec![]))
        .collect()
}

/// MUT02: a field of the enclosing object replaced outside constructors and
/// mutators.
pub fn check_field_assignments(facts: &Facts, cfg: &RuleConfig) -> Vec<Finding> {
    facts
        .assign_facts
        .iter()
        .filter(|a| a.target_kind == TargetKind::OwnField)
        .filter(|a| {
            !a.enclosing.method_is_constructor && !is_mutator_name(&a.enclosing.method_name, cfg)
        })
        .map(|a| {
            Finding::new(
                RuleId::Mut02,
                a.location.clone(),
                vec![
                    a.field_name.clone().unwrap_or_default(),
                    a.enclosing.method_name.clone(),
                ],
            )
        })
        .collect()
}

fn capture(v: &str) -> Element {
    Element::Capture(v.to_string())
}

/// `root.{component}.{layer}.*`
fn layered_type_pattern(cfg: &RuleConfig) -> QNamePattern {
    QNamePattern::from_elements(vec![
        Element::Literal(cfg.root_package.clone()),
        capture("c"),
        capture("l"),
        Element::AnySeg,
    ])
    .expect("fixed pattern shape")
}

/// `root.{var}..*`
fn component_pattern(cfg: &RuleConfig, var: &str) -> QNamePattern {
    QNamePattern::from_elements(vec![
        Element::Literal(cfg.root_package.clone()),
        capture(var),
        Element::Ellipsis,
        Element::AnySeg,
    ])
    .expect("fixed pattern shape")
}

fn layer_of(pattern: &QNamePattern, qname: &str, cfg: &RuleConfig) -> Option<usize> {
    let bindings = pattern.match_qname(qname, &Binding::new());
    let binding = bindings.first()?;
    cfg.layer_index(binding.get("l")?)
}

/// ARCH01: calls must stay within a layer or go to the layer directly below.
pub fn check_layering(facts: &Facts, cfg: &RuleConfig) -> Vec<Finding> {
    let pattern = layered_type_pattern(cfg);
    facts
        .call_facts
        .iter()
        .filter(|c| {
            let Some(callee) = c.callee_type_qname.as_deref() else {
                return false;
            };
            let (Some(from), Some(to)) = (
                layer_of(&pattern, &c.caller.type_qname(), cfg),
                layer_of(&pattern, callee, cfg),
            ) else {
                return false;
            };
            to != from && to != from + 1
        })
        .map(|c| Finding::new(RuleId::Arch01, c.location.clone(), vec![]))
        .collect()
}

/// ARCH02 and ARCH03, as dependency rules over captured component names:
/// product components may call themselves and service components only, and
/// service components may not call product components.
pub fn check_component_isolation(facts: &Facts, cfg: &RuleConfig) -> Vec<Finding> {
    let svc = &cfg.service_components;
    let within = component_pattern(cfg, "a");
    let call = SignaturePattern::new(component_pattern(cfg, "b"), MemberPattern::AnySeg);
    let product_rule = DependencyRule::new(
        within.clone(),
        call.clone(),
        vec![
            Constraint::NotInSet("a".into(), svc.clone()),
            Constraint::NotEqual("a".into(), "b".into()),
            Constraint::NotInSet("b".into(), svc.clone()),
        ],
    )
    .expect("constraints use captured variables");
    let service_rule = DependencyRule::new(
        within,
        call,
        vec![
            Constraint::InSet("a".into(), svc.clone()),
            Constraint::NotInSet("b".into(), svc.clone()),
        ],
    )
    .expect("constraints use captured variables");

    let mut out = Vec::new();
    for c in &facts.call_facts {
        let Some(callee) = c.callee_type_qname.as_deref() else {
            continue;
        };
        let caller = c.caller.type_qname();
        let method = &c.callee_method_name;
        if let Some(b) = product_rule
            .violation(&caller, callee, method)
            .expect("all variables bound")
        {
            out.push(Finding::new(
                RuleId::Arch02,
                c.location.clone(),
                vec![b["a"].clone(), b["b"].clone()],
            ));
        }
        if service_rule
            .violation(&caller, callee, method)
            .expect("all variables bound")
            .is_some()
        {
            out.push(Finding::new(RuleId::Arch03, c.location.clone(), vec![]));
        }
    }
    out
}

fn is_failure(facts: &Facts, qname: &str, cfg: &RuleConfig) -> bool {
    facts
        .type_index
        .is_subtype_of_any(qname, &cfg.failure_base_types)
}

/// EXC01: an Exc subtype thrown without being named in the throws clause.
pub fn check_undeclared_exc_throws(facts: &Facts, cfg: &RuleConfig) -> Vec<Finding> {
    facts
        .throw_facts
        .iter()
        .filter(|t| {
            facts
                .type_index
                .is_subtype_of_any(&t.exc_type_qname, &cfg.exc_base_types)
                && !is_failure(facts, &t.exc_type_qname, cfg)
                && !t.enclosing_throws.contains(&t.exc_type_qname)
        })
        .map(|t| {
            Finding::new(
                RuleId::Exc01,
                t.location.clone(),
                vec![t.exc_type_qname.clone(), t.enclosing_method.clone()],
            )
        })
        .collect()
}

/// MSG01 and MSG02: the number of message arguments at a throw site against
/// the placeholders of the thrown type's template.
pub fn check_message_param_arity(facts: &Facts, cfg: &RuleConfig) -> Vec<Finding> {
    let exception_bases: BTreeSet<String> = cfg
        .exc_base_types
        .union(&cfg.failure_base_types)
        .cloned()
        .collect();
    let mut out = Vec::new();
    for t in &facts.throw_facts {
        let Some(template) = facts.templates.get(&t.exc_type_qname) else {
            continue;
        };
        if !facts
            .type_index
            .is_subtype_of_any(&t.exc_type_qname, &exception_bases)
        {
            continue;
        }
        let passed = if is_failure(facts, &t.exc_type_qname, cfg) {
            t.message_arg_count.saturating_sub(1)
        } else {
            t.message_arg_count
        };
        let required = required_arity(template);
        let rule = match passed.cmp(&required) {
            std::cmp::Ordering::Less => RuleId::Msg01,
            std::cmp::Ordering::Greater => RuleId::Msg02,
            std::cmp::Ordering::Equal => continue,
        };
        out.push(Finding::new(
            rule,
            t.location.clone(),
            vec![
                passed.to_string(),
                t.exc_type_qname.clone(),
                required.to_string(),
            ],
        ));
    }
    out
}

/// Applies configured severities (dropping rules that are off) and sorts.
pub fn apply_severities(findings: Vec<Finding>, cfg: &RuleConfig) -> Report {
    Report::new(
        findings
            .into_iter()
            .filter_map(|mut f| {
                f.severity = Severity::from_level(cfg.severity_of(f.rule_id))?;
                Some(f)
            })
            .collect(),
    )
}

/// Runs every enabled rule.
pub fn run_all(facts: &Facts, cfg: &RuleConfig) -> Result<Report, ConfigError> {
    cfg.validate()?;
    type Check = fn(&Facts, &RuleConfig) -> Vec<Finding>;
    let checks: [(&[RuleId], Check); 6] = [
        (&[RuleId::Mut01], check_mutator_calls),
        (&[RuleId::Mut02], check_field_assignments),
        (&[RuleId::Arch01], check_layering),
        (&[RuleId::Arch02, RuleId::Arch03], check_component_isolation),
        (&[RuleId::Exc01], check_undeclared_exc_throws),
        (&[RuleId::Msg01, RuleId::Msg02], check_message_param_arity),
    ];
    let mut findings = Vec::new();
    for (rules, check) in checks {
        if rules
            .iter()
            .any(|r| Severity::from_level(cfg.severity_of(*r)).is_some())
        {
            findings.extend(check(facts, cfg));
        }
    }
    Ok(apply_severities(findings, cfg))
}
