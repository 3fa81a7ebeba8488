//! Property tests for the MiniJ frontend: printing and reparsing is stable,
//! and facts come out in source order with in-range locations.

use convlint_core::minij::ast::*;
use convlint_core::minij::print::print_unit;
use convlint_core::minij::{extract_facts, parse_unit};
use proptest::prelude::*;

const NAMES: &[&str] = &["a", "b", "person", "personMut", "name", "x1"];
const METHODS: &[&str] = &["f", "setName", "promoteMut", "getName", "load"];
const TYPES: &[&str] = &[
    "String",
    "Person",
    "List<String>",
    "Person[]",
    "Map<String,Person>",
];
const CLASS_TYPES: &[&str] = &["Person", "p.q.Dao", "String"];

fn pick(items: &'static [&'static str]) -> BoxedStrategy<String> {
    prop::sample::select(items).prop_map(str::to_string).boxed()
}

fn e(kind: ExprKind) -> Expr {
    Expr::new(kind, Pos::default())
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        pick(NAMES).prop_map(|n| e(ExprKind::Name(n))),
        Just(e(ExprKind::This)),
        pick(&["1", "\"s\"", "true", "null", "'c'"]).prop_map(|l| e(ExprKind::Literal(l))),
        pick(CLASS_TYPES).prop_map(|t| e(ExprKind::ClassLiteral { type_text: t })),
    ]
}

fn is_receiver(r: &Expr) -> bool {
    !matches!(r.kind, ExprKind::Literal(_) | ExprKind::ClassLiteral { .. })
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 3, |inner| {
        let receiver = inner.clone().prop_filter("receiver", is_receiver);
        let args = prop::collection::vec(inner.clone(), 0..3);
        let simple_type = pick(&["Person", "Dao", "p.q.Dao"]);
        prop_oneof![
            (receiver.clone(), pick(NAMES)).prop_map(|(r, name)| e(ExprKind::FieldAccess {
                receiver: Box::new(r),
                name
            })),
            (
                prop::option::of(receiver.clone()),
                pick(METHODS),
                args.clone(),
                prop::option::of(pick(&["String", "FileAccessRightExc"]))
            )
                .prop_map(|(r, m, args, ta)| {
                    let type_args_raw = r.as_ref().and(ta);
                    e(ExprKind::Call {
                        receiver: r.map(Box::new),
                        method_name: m,
                        args,
                        type_args_raw,
                        name_pos: Pos::default(),
                    })
                }),
            (simple_type.clone(), args)
                .prop_map(|(t, args)| e(ExprKind::New { type_text: t, args })),
            (prop::bool::ANY, inner.clone()).prop_map(|(not, operand)| e(ExprKind::Unary {
                op: if not { UnaryOp::Not } else { UnaryOp::Neg },
                operand: Box::new(operand),
            })),
            (
                prop::sample::select(
                    &[
                        BinaryOp::Or,
                        BinaryOp::And,
                        BinaryOp::Eq,
                        BinaryOp::Ne,
                        BinaryOp::Lt,
                        BinaryOp::Gt,
                        BinaryOp::Le,
                        BinaryOp::Ge,
                        BinaryOp::Add,
                        BinaryOp::Sub
                    ][..]
                ),
                inner.clone(),
                inner.clone()
            )
                .prop_map(|(op, l, r)| e(ExprKind::Binary {
                    op,
                    lhs: Box::new(l),
                    rhs: Box::new(r),
                })),
            (inner.clone(), simple_type).prop_map(|(x, t)| e(ExprKind::InstanceOf {
                expr: Box::new(x),
                type_text: t,
            })),
            (target(), inner).prop_map(|(t, v)| e(ExprKind::Assign {
                target: Box::new(t),
                value: Box::new(v),
            })),
        ]
    })
}

fn target() -> impl Strategy<Value = Expr> {
    prop_oneof![
        pick(NAMES).prop_map(|n| e(ExprKind::Name(n))),
        pick(NAMES).prop_map(|n| e(ExprKind::FieldAccess {
            receiver: Box::new(e(ExprKind::This)),
            name: n,
        })),
    ]
}

fn call() -> impl Strategy<Value = Expr> {
    expr().prop_filter("call", |x| matches!(x.kind, ExprKind::Call { .. }))
}

fn s(kind: StmtKind) -> Stmt {
    Stmt {
        kind,
        pos: Pos::default(),
    }
}

/// Whether a following `else` would attach inside `stmt`. The parser never
/// produces an `if`/`else` whose then-branch is such a statement.
fn ends_open(stmt: &Stmt) -> bool {
    match &stmt.kind {
        StmtKind::If {
            else_branch: None, ..
        } => true,
        StmtKind::If {
            else_branch: Some(e),
            ..
        } => ends_open(e),
        StmtKind::For { body, .. } => ends_open(body),
        _ => false,
    }
}

fn stmt() -> impl Strategy<Value = Stmt> {
    let simple = prop_oneof![
        (target(), expr()).prop_map(|(t, v)| s(StmtKind::Assign {
            target: t,
            value: v
        })),
        call().prop_map(|c| s(StmtKind::Expr(c))),
        (
            pick(&["FooExc", "p.BarFailure"]),
            prop::collection::vec(expr(), 0..3)
        )
            .prop_map(|(t, args)| s(StmtKind::Throw(e(ExprKind::New { type_text: t, args })))),
        prop::option::of(expr()).prop_map(|v| s(StmtKind::Return(v))),
        (pick(NAMES), pick(TYPES), prop::option::of(expr())).prop_map(|(name, t, init)| s(
            StmtKind::LocalVar {
                name,
                type_text: t,
                init,
            }
        )),
    ];
    simple.prop_recursive(3, 16, 3, |inner| {
        let block = prop::collection::vec(inner.clone(), 0..3);
        prop_oneof![
            (expr(), inner.clone(), prop::option::of(inner.clone()))
                .prop_filter("dangling else", |(_, t, el)| el.is_none() || !ends_open(t))
                .prop_map(|(c, t, el)| s(StmtKind::If {
                    cond: c,
                    then_branch: Box::new(t),
                    else_branch: el.map(Box::new),
                })),
            (
                block.clone(),
                pick(&["FooExc", "Exception"]),
                pick(NAMES),
                block.clone()
            )
                .prop_map(|(body, t, v, handler)| s(StmtKind::Try {
                    body,
                    catches: vec![CatchClause {
                        exc_type_text: t,
                        var_name: v,
                        body: handler,
                        pos: Pos::default(),
                    }],
                })),
            (pick(&["int i=0;i<n;i++", "String x:xs", ";;"]), inner).prop_map(|(h, b)| s(
                StmtKind::For {
                    header_raw: h,
                    body: Box::new(b),
                }
            )),
            block.prop_map(|b| s(StmtKind::Block(b))),
        ]
    })
}

fn method() -> impl Strategy<Value = MethodDecl> {
    (
        pick(METHODS),
        pick(&["void", "String", "List<Person>"]).prop_map(|t| (t != "void").then_some(t)),
        prop::collection::vec((pick(NAMES), pick(TYPES), prop::bool::ANY), 0..3),
        prop::collection::vec(pick(&["FooExc", "p.BarExc"]), 0..2),
        prop::option::of(pick(&["Loads {0} from {1}.", "Plain"])),
        prop::option::of(prop::collection::vec(stmt(), 0..4)),
    )
        .prop_map(|(name, ret, params, throws, doc, body)| {
            let n = params.len();
            MethodDecl {
                name,
                is_constructor: false,
                return_type: ret,
                params: params
                    .into_iter()
                    .enumerate()
                    .map(|(i, (pname, t, nullable))| Param {
                        name: format!("{pname}{i}"),
                        type_text: t,
                        is_variadic: i + 1 == n && nullable,
                        annotations: if nullable {
                            vec!["Nullable".into()]
                        } else {
                            vec![]
                        },
                    })
                    .collect(),
                throws_list: throws,
                annotations: vec![],
                doc_template: doc,
                body,
                pos: Pos::default(),
            }
        })
}

fn unit() -> impl Strategy<Value = CompilationUnit> {
    (
        pick(&["p", "fb6.user.ui", "multex"]),
        prop::collection::vec(
            (
                pick(&["p.q.Dao", "multex.Exc", "java.util"]),
                prop::bool::ANY,
            ),
            0..3,
        ),
        prop::collection::vec(
            (
                pick(&["Person", "FooExc", "Dao"]),
                prop::option::of(pick(&["Exc", "multex.Failure"])),
                prop::collection::vec((pick(NAMES), pick(TYPES), prop::option::of(expr())), 0..3),
                prop::collection::vec(method(), 0..3),
                prop::option::of(pick(&["User {0} may not access {1}."])),
            ),
            0..3,
        ),
    )
        .prop_map(|(package, imports, types)| CompilationUnit {
            file: "gen.minij".into(),
            package_name: package,
            imports: imports
                .into_iter()
                .map(|(q, wildcard)| Import {
                    qname: q,
                    is_static: false,
                    is_wildcard: wildcard,
                    pos: Pos::default(),
                })
                .collect(),
            types: types
                .into_iter()
                .map(|(name, ext, fields, methods, doc)| TypeDecl {
                    name,
                    doc_template: doc,
                    extends_name: ext,
                    annotations: vec![],
                    fields: fields
                        .into_iter()
                        .map(|(n, t, init)| FieldDecl {
                            name: n,
                            type_text: t,
                            annotations: vec![],
                            init,
                            pos: Pos::default(),
                        })
                        .collect(),
                    methods,
                    pos: Pos::default(),
                })
                .collect(),
        })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 256,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn reparse_is_stable(u in unit()) {
        let text = print_unit(&u);
        let mut parsed = parse_unit(&text, "gen.minij")
            .unwrap_or_else(|e| panic!("printed unit does not parse: {e}\n{text}"));
        prop_assert_eq!(print_unit(&parsed), text.clone());
        parsed.erase_positions();
        let mut expected = u.clone();
        expected.erase_positions();
        prop_assert_eq!(parsed, expected, "\n{}", text);
    }

    #[test]
    fn facts_are_in_source_order_and_in_range(u in unit()) {
        let text = print_unit(&u);
        let parsed = parse_unit(&text, "gen.minij").unwrap();
        let line_count = text.lines().count() as u32;
        let facts = extract_facts(&[parsed]);
        let in_range = |l: &SourceLocation| l.line >= 1 && l.line <= line_count && l.column >= 1;
        let calls: Vec<_> = facts.call_facts.iter().map(|f| f.location.pos()).collect();
        let assigns: Vec<_> = facts.assign_facts.iter().map(|f| f.location.pos()).collect();
        let throws: Vec<_> = facts.throw_facts.iter().map(|f| f.location.pos()).collect();
        for seq in [&calls, &assigns, &throws] {
            prop_assert!(seq.windows(2).all(|w| w[0] <= w[1]), "{:?}\n{}", seq, text);
        }
        prop_assert!(facts.call_facts.iter().all(|f| in_range(&f.location)));
        prop_assert!(facts.assign_facts.iter().all(|f| in_range(&f.location)));
        prop_assert!(facts.throw_facts.iter().all(|f| in_range(&f.location)));
    }

    #[test]
    fn parse_never_panics(src in "[a-zA-Z0-9 .;{}()=<>!+\\-\"/*@,\n]{0,200}") {
        let _ = parse_unit(&src, "fuzz.minij");
    }
}

#[test]
fn reparse_of_layout_variants_is_structurally_equal() {
    let compact = "package p; class A { void f(Person person) { person.setName(\"Otto\"); if (a == null) throw new FooExc(a); } }";
    let spread = "package p;\n\nclass A {\n  void f(Person person)\n  {\n    person\n      .setName( \"Otto\" );\n    if (a==null)\n      throw new FooExc( a );\n  }\n}\n";
    let mut x = parse_unit(compact, "x.minij").unwrap();
    let mut y = parse_unit(spread, "x.minij").unwrap();
    x.erase_positions();
    y.erase_positions();
    assert_eq!(x, y);
}
