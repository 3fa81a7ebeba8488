use convlint_core::minij::{
    extract_facts_with, parse_unit, CallFact, Facts, MethodContext, ReceiverKind,
};
use convlint_core::rules::*;
use convlint_core::SourceLocation;
use proptest::prelude::*;

fn facts_of(sources: &[(&str, &str)], cfg: &RuleConfig) -> Facts {
    let units: Vec<_> = sources
        .iter()
        .map(|(file, src)| parse_unit(src, file).unwrap())
        .collect();
    extract_facts_with(&units, &cfg.into())
}

fn run(sources: &[(&str, &str)]) -> Vec<(String, u32, String)> {
    let cfg = RuleConfig::default();
    run_all(&facts_of(sources, &cfg), &cfg)
        .unwrap()
        .findings()
        .iter()
        .map(|f| (f.rule_id.to_string(), f.location.line, f.message.clone()))
        .collect()
}

fn ids(sources: &[(&str, &str)]) -> Vec<String> {
    run(sources).into_iter().map(|(id, _, _)| id).collect()
}

#[test]
fn mutator_names() {
    let cfg = RuleConfig::default();
    assert!(is_mutator_name("promoteMut", &cfg));
    assert!(is_mutator_name("setName", &cfg));
    assert!(!is_mutator_name("printSalary", &cfg));
}

#[test]
fn mutator_calls_by_receiver_kind() {
    let src = "package p;
class Person {
    String name;
    Person boss;
    Person bossMut;
    Person() { setName(\"a\"); }
    void setName(String n) { }
    void renameMut() { setName(\"b\"); this.setName(\"c\"); }
    void show(Person person, Person personMut) {
        setName(\"d\");
        person.setName(\"e\");
        personMut.setName(\"f\");
        boss.promoteMut();
        bossMut.promoteMut();
        new Person().initMut();
        person.getBoss().promoteMut();
        Person.setDefault();
    }
}
";
    let got = run(&[("p/Person.minij", src)]);
    let lines: Vec<u32> = got.iter().map(|(_, l, _)| *l).collect();
    assert!(got.iter().all(|(id, _, _)| id == "MUT01"));
    // The unqualified call in `show`, `person.setName` and `boss.promoteMut`.
    assert_eq!(lines, vec![10, 11, 13]);
}

#[test]
fn field_assignments() {
    let src = "package p;
class Person {
    String name;
    Person() { this.name = \"a\"; }
    void renameMut() { this.name = \"b\"; name = \"c\"; }
    void printSalary() { this.name = \"Otto\"; String local; local = \"x\"; }
}
";
    let got = run(&[("p/Person.minij", src)]);
    assert_eq!(
        got,
        vec![(
            "MUT02".to_string(),
            6,
            "Field name replaced in non-mutator method printSalary".to_string()
        )]
    );
}

fn arch_sources(calls: &[(&str, &str)]) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (i, (from, to)) in calls.iter().enumerate() {
        let (to_pkg, to_ty) = to.rsplit_once('.').unwrap();
        out.push((
            format!("{from}/Caller{i}.minij"),
            format!(
                "package {from};\nimport {to};\nclass Caller{i} {{\n    void run({to_ty} target) {{\n        target.work();\n    }}\n}}\n"
            ),
        ));
        out.push((
            format!("{to_pkg}/{to_ty}.minij"),
            format!("package {to_pkg};\nclass {to_ty} {{\n    void work() {{ }}\n}}\n"),
        ));
    }
    out
}

fn arch_ids(from: &str, to: &str) -> Vec<String> {
    let sources = arch_sources(&[(from, to)]);
    let refs: Vec<(&str, &str)> = sources
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    ids(&refs)
}

#[test]
fn layering() {
    assert_eq!(
        arch_ids("fb6.finance.ui", "fb6.finance.db.PersonDao"),
        vec!["ARCH01"]
    );
    assert!(arch_ids("fb6.finance.ui", "fb6.finance.lg.PersonLogic").is_empty());
    assert!(arch_ids("fb6.finance.lg", "fb6.finance.lg.Other").is_empty());
    assert!(arch_ids("fb6.finance.lg", "fb6.finance.db.PersonDao").is_empty());
    // Upward calls are not strict layering either.
    assert_eq!(
        arch_ids("fb6.finance.db", "fb6.finance.ui.View"),
        vec!["ARCH01"]
    );
    // Packages outside the scheme are exempt.
    assert!(arch_ids("other.finance.ui", "other.finance.db.PersonDao").is_empty());
    assert!(arch_ids("fb6.finance.web", "fb6.finance.db.PersonDao").is_empty());
}

#[test]
fn component_isolation() {
    assert_eq!(
        arch_ids("fb6.service.lg", "fb6.user.lg.PersonService"),
        vec!["ARCH03"]
    );
    assert_eq!(
        arch_ids("fb6.user.lg", "fb6.finance.lg.Ledger"),
        vec!["ARCH02"]
    );
    assert!(arch_ids("fb6.user.lg", "fb6.service.lg.Mailer").is_empty());
    assert!(arch_ids("fb6.service.lg", "fb6.service.db.MailStore").is_empty());
    // Both rules can fire on one call.
    assert_eq!(
        arch_ids("fb6.user.ui", "fb6.finance.db.Dao"),
        vec!["ARCH01", "ARCH02"]
    );
    let sources = arch_sources(&[("fb6.user.lg", "fb6.finance.lg.Ledger")]);
    let refs: Vec<(&str, &str)> = sources
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    assert_eq!(
        run(&refs)[0].2,
        "Component user must not call component finance"
    );
}

const EXC_BASE: &str = "package multex;\nclass Exc { }\nclass Failure { }\n";

#[test]
fn undeclared_exc() {
    let src = "package p;
import multex.Exc;
import multex.Failure;
class UsernameNullExc extends Exc { }
class WrappedFailure extends Failure { }
class Svc {
    void find(String u) throws PersonNotFoundExc {
        if (u == null) {
            throw new UsernameNullExc();
        }
        throw new WrappedFailure();
    }
    void declared(String u) throws UsernameNullExc {
        throw new UsernameNullExc();
    }
    void helper(String u) {
        throwNew(UsernameNullExc.class);
        throw new IllegalStateException();
    }
}
";
    let got = run(&[("multex/Exc.minij", EXC_BASE), ("p/Svc.minij", src)]);
    assert_eq!(
        got,
        vec![
            (
                "EXC01".to_string(),
                9,
                "Exception p.UsernameNullExc thrown but not declared in the throws clause of find"
                    .to_string()
            ),
            (
                "EXC01".to_string(),
                17,
                "Exception p.UsernameNullExc thrown but not declared in the throws clause of helper"
                    .to_string()
            ),
        ]
    );
}

#[test]
fn message_arity() {
    let src = "package p;
import multex.Exc;
import multex.Failure;
/** User {0} does not have the right to access file {1}. */
class FileAccessRightExc extends Exc { }
/**
 * Failure loading object of class {0} with id {1}.
 */
class LoadObjectFailure extends Failure { }
class NoTemplateExc extends Exc { }
class Access {
    void a(String u, String f) throws FileAccessRightExc, NoTemplateExc {
        throwNew(FileAccessRightExc.class, u, f);
        throwNew(FileAccessRightExc.class, u);
        throw new FileAccessRightExc(u, f, f);
        throw new NoTemplateExc(u);
    }
    void b(Exception ex, Object id) {
        throwNew(LoadObjectFailure.class, ex, id.getClass(), id);
        throw new LoadObjectFailure(ex, id);
        throw new LoadObjectFailure();
    }
}
";
    let got = run(&[("multex/Exc.minij", EXC_BASE), ("p/Access.minij", src)]);
    let expected = [
        ("MSG01", 14, "Throw site passes 1 message parameters but template of p.FileAccessRightExc requires 2"),
        ("MSG02", 15, "Throw site passes 3 message parameters but template of p.FileAccessRightExc requires only 2"),
        ("MSG01", 20, "Throw site passes 1 message parameters but template of p.LoadObjectFailure requires 2"),
        ("MSG01", 21, "Throw site passes 0 message parameters but template of p.LoadObjectFailure requires 2"),
    ];
    let expected: Vec<(String, u32, String)> = expected
        .iter()
        .map(|(a, b, c)| (a.to_string(), *b, c.to_string()))
        .collect();
    assert_eq!(got, expected);
}

#[test]
fn severities_and_unknown_rules() {
    let src = "package p;\nclass A {\n    String name;\n    void f(A a) { a.setName(\"x\"); this.name = \"y\"; }\n}\n";
    let mut cfg = RuleConfig::default();
    let facts = facts_of(&[("p/A.minij", src)], &cfg);
    assert_eq!(run_all(&facts, &cfg).unwrap().len(), 2);

    cfg.severities
        .insert("MUT01".into(), SeverityLevel::Warning);
    cfg.severities.insert("MUT02".into(), SeverityLevel::Off);
    let report = run_all(&facts, &cfg).unwrap();
    assert_eq!(report.len(), 1);
    assert_eq!(report.warning_count(), 1);
    assert_eq!(report.findings()[0].severity, Severity::Warning);

    for id in RuleId::ALL {
        cfg.severities.insert(id.to_string(), SeverityLevel::Off);
    }
    assert!(run_all(&facts, &cfg).unwrap().is_empty());

    cfg.severities.insert("MUT03".into(), SeverityLevel::Off);
    assert_eq!(run_all(&facts, &cfg).unwrap_err().field, "severities");
}

#[test]
fn empty_facts_give_empty_report() {
    assert!(run_all(&Facts::default(), &RuleConfig::default())
        .unwrap()
        .is_empty());
}

#[test]
fn catalog_is_bit_exact() {
    let expected = [
        ("MUT01", "Illegal mutator call on an immutable reference"),
        ("MUT02", "Field {0} replaced in non-mutator method {1}"),
        ("ARCH01", "Do not call the db-layer directly"),
        ("ARCH02", "Component {0} must not call component {1}"),
        (
            "ARCH03",
            "Do not call a product component from the service component",
        ),
        (
            "EXC01",
            "Exception {0} thrown but not declared in the throws clause of {1}",
        ),
        (
            "MSG01",
            "Throw site passes {0} message parameters but template of {1} requires {2}",
        ),
        (
            "MSG02",
            "Throw site passes {0} message parameters but template of {1} requires only {2}",
        ),
    ];
    let catalog = rule_catalog();
    for (id, template) in expected {
        assert_eq!(catalog.get(id), Some(template));
    }
}

const COMPONENTS: &[&str] = &["user", "finance", "service", "tools"];
const LAYERS: &[&str] = &["ui", "lg", "db", "web"];

fn qname() -> impl Strategy<Value = String> {
    prop_oneof![
        4 => (prop::sample::select(COMPONENTS), prop::sample::select(LAYERS))
            .prop_map(|(c, l)| format!("fb6.{c}.{l}.T")),
        1 => Just("other.user.ui.T".to_string()),
        1 => Just("fb6.T".to_string()),
    ]
}

fn call_fact() -> impl Strategy<Value = CallFact> {
    (
        qname(),
        prop::option::of(qname()),
        prop::sample::select(
            &[
                ReceiverKind::This,
                ReceiverKind::SimpleName,
                ReceiverKind::FieldOfThis,
                ReceiverKind::NewExpr,
                ReceiverKind::StaticType,
                ReceiverKind::CallResult,
                ReceiverKind::Unresolved,
            ][..],
        ),
        prop::sample::select(&["person", "personMut", "x"][..]),
        prop::sample::select(&["setName", "promoteMut", "get"][..]),
        prop::sample::select(&["show", "initMut"][..]),
    )
        .prop_map(|(caller, callee, kind, recv, method, in_method)| {
            let (package, type_name) = caller.rsplit_once('.').unwrap();
            CallFact {
                caller: MethodContext {
                    package: package.into(),
                    type_name: type_name.into(),
                    method_name: in_method.into(),
                    method_is_mutator: in_method.ends_with("Mut"),
                    method_is_constructor: false,
                },
                receiver_kind: kind,
                receiver_name: Some(recv.into()),
                callee_type_qname: callee,
                callee_method_name: method.into(),
                arg_count: 0,
                location: SourceLocation {
                    file: "f.minij".into(),
                    line: 1,
                    column: 1,
                },
            }
        })
}

fn component(q: &str) -> Option<&str> {
    let mut segs = q.split('.');
    (segs.next() == Some("fb6")).then(|| segs.next()).flatten()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rule_invariants(mut calls in prop::collection::vec(call_fact(), 0..20)) {
        for (i, c) in calls.iter_mut().enumerate() {
            c.location.line = i as u32 + 1;
        }
        let cfg = RuleConfig::default();
        let facts = Facts { call_facts: calls.clone(), ..Facts::default() };
        let report = run_all(&facts, &cfg).unwrap();

        for f in check_mutator_calls(&facts, &cfg) {
            let fact = calls.iter().find(|c| c.location == f.location).unwrap();
            prop_assert!(!matches!(
                fact.receiver_kind,
                ReceiverKind::StaticType | ReceiverKind::CallResult | ReceiverKind::Unresolved
            ));
        }
        let isolation = check_component_isolation(&facts, &cfg);
        for c in &calls {
            let Some(callee) = c.callee_type_qname.as_deref() else { continue };
            let (a, b) = (component(&c.caller.type_qname()).map(str::to_string), component(callee).map(str::to_string));
            if a == b || b.as_deref().is_some_and(|b| cfg.service_components.contains(b)) {
                prop_assert!(isolation.iter().all(|f| f.location != c.location));
            }
        }
        // Sorted by (file, line, column, rule id) and stable across runs.
        let keys: Vec<_> = report.findings().iter()
            .map(|f| (f.location.clone(), f.rule_id.to_string()))
            .collect();
        prop_assert!(keys.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(report, run_all(&facts, &cfg).unwrap());
    }
}
