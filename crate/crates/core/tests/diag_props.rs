use std::collections::BTreeMap;

use convlint_core::diag::{
    check_null_args, placeholder_indices, propagate, render_chain, render_message, required_arity,
    CallTrace, ExcValue, Frame, FrameArg, MessageCatalog, OPERATION_FAILURE,
};
use proptest::prelude::*;

fn template() -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop_oneof![
            "[a-z ]{0,6}",
            (0usize..5).prop_map(|i| format!("{{{i}}}")),
            Just("{".to_string()),
            Just("}".to_string()),
            Just("{x}".to_string()),
        ],
        0..8,
    )
    .prop_map(|parts| parts.concat())
}

fn exc_value() -> impl Strategy<Value = ExcValue> {
    let single = (
        prop::sample::select(&["A", "B", "multex.OperationFailure", "Unknown"][..]),
        prop::collection::vec("[a-z{}0-9]{0,4}", 0..4),
    )
        .prop_map(|(k, params)| ExcValue::new(k, params));
    prop::collection::vec(single, 1..5).prop_map(|chain| {
        chain
            .into_iter()
            .rev()
            .reduce(|cause, outer| outer.caused_by(cause))
            .unwrap()
    })
}

fn catalog() -> impl Strategy<Value = MessageCatalog> {
    (template(), template()).prop_map(|(a, b)| [("A", a), ("B", b)].into_iter().collect())
}

fn frame() -> impl Strategy<Value = Frame> {
    (
        prop::collection::vec((prop::option::of("[a-z]{1,3}"), any::<bool>()), 0..4),
        any::<bool>(),
        prop::collection::vec(prop::sample::select(&["A", "B", "Base"][..]), 0..2),
    )
        .prop_map(|(args, wrap, throws)| Frame {
            method_qname: "p.T.m".into(),
            simple_sig: "T.m(..)".into(),
            args: args
                .into_iter()
                .enumerate()
                .map(|(i, (value, nullable))| FrameArg {
                    name: format!("a{i}"),
                    type_text: "String".into(),
                    value,
                    nullable,
                })
                .collect(),
            method_nullable: false,
            declared_throws: throws.into_iter().map(str::to_string).collect(),
            wrap_enabled: wrap,
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rendering_is_total(cat in catalog(), e in exc_value()) {
        let chain = render_chain(&cat, &e);
        prop_assert_eq!(chain.split('\n').count(), e.chain_len());
        for (i, line) in chain.split('\n').enumerate() {
            prop_assert_eq!(i > 0, line.starts_with("Caused by: "));
        }
    }

    #[test]
    fn substitution_is_complete(t in template(), params in prop::collection::vec("[a-z]{0,3}", 0..6)) {
        let cat: MessageCatalog = [("K", t.clone())].into_iter().collect();
        let out = render_message(&cat, &ExcValue::new("K", params.clone()));
        let remaining = placeholder_indices(&out);
        prop_assert!(remaining.iter().all(|i| *i >= params.len()), "{} -> {}", t, out);
        if params.len() >= required_arity(&t) {
            prop_assert!(remaining.is_empty());
        }
    }

    #[test]
    fn null_checks_count_non_nullable_nulls(f in frame()) {
        let expected = f.args.iter().filter(|a| a.value.is_none() && !a.nullable).count();
        let failures = check_null_args(&f);
        prop_assert_eq!(failures.len(), expected);
        for e in failures {
            prop_assert_eq!(e.params.len(), 2);
            prop_assert_eq!(&e.params[1], &f.simple_sig);
        }
    }

    #[test]
    fn propagation_preserves_the_cause(
        frames in prop::collection::vec(frame(), 1..6),
        raise in 0usize..6,
        raised in prop::sample::select(&["A", "B", "C"][..]),
    ) {
        let raise = raise % frames.len();
        let hierarchy: BTreeMap<String, String> =
            [("A".to_string(), "Base".to_string())].into();
        let raised = ExcValue::new(raised, vec!["p".into()]);
        let trace = CallTrace::new(frames.clone(), raise, raised.clone(), hierarchy).unwrap();
        let out = propagate(&trace);
        prop_assert_eq!(out.innermost(), &raised);
        let wrappers = out.chain_len() - 1;
        prop_assert!(wrappers <= raise + 1);
        prop_assert!(out.chain().take(wrappers).all(|e| e.key == OPERATION_FAILURE));
        // With nothing wrap-enabled at or above the raise frame nothing changes.
        if frames[..=raise].iter().all(|f| !f.wrap_enabled) {
            prop_assert_eq!(out, raised);
        }
    }
}
