//! Flat fact tables extracted from parsed units.
//!
//! Rules never look at syntax trees directly; they consume the call, assignment
//! and throw facts produced here together with the corpus type index.

use std::collections::{BTreeMap, BTreeSet};

use super::ast::*;
use crate::rules::config::{NameGlob, RuleConfig};

/// Enclosing method of a fact.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MethodContext {
    pub package: String,
    pub type_name: String,
    pub method_name: String,
    pub method_is_mutator: bool,
    pub method_is_constructor: bool,
}

impl MethodContext {
    pub fn type_qname(&self) -> String {
        format!("{}.{}", self.package, self.type_name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReceiverKind {
    /// Explicit `this.m()` or an unqualified call on the enclosing object.
    This,
    /// A local variable or parameter.
    SimpleName,
    /// A field of the enclosing type, as `f.m()` or `this.f.m()`.
    FieldOfThis,
    /// `new T(..).m()`, and constructor invocations themselves.
    NewExpr,
    /// A type name, or a statically imported method.
    StaticType,
    /// The result of another call.
    CallResult,
    Unresolved,
}

impl ReceiverKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ReceiverKind::This => "this",
            ReceiverKind::SimpleName => "simple_name",
            ReceiverKind::FieldOfThis => "field_of_this",
            ReceiverKind::NewExpr => "new_expr",
            ReceiverKind::StaticType => "static_type",
            ReceiverKind::CallResult => "call_result",
            ReceiverKind::Unresolved => "unresolved",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CallFact {
    pub caller: MethodContext,
    pub receiver_kind: ReceiverKind,
    pub receiver_name: Option<String>,
    /// Fully qualified, when the receiver's declared type could be resolved.
    pub callee_type_qname: Option<String>,
    pub callee_method_name: String,
    pub arg_count: usize,
    pub location: SourceLocation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetKind {
    OwnField,
    Local,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignFact {
    pub enclosing: MethodContext,
    pub target_kind: TargetKind,
    pub field_name: Option<String>,
    pub location: SourceLocation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThrowForm {
    /// `throw new T(..)`
    Constructor,
    /// `helper(T.class, ..)`, with or without a leading `throw`.
    Helper,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThrowFact {
    pub exc_type_qname: String,
    pub form: ThrowForm,
    pub helper_name: Option<String>,
    /// Arguments after the class literal of a helper call (all arguments for
    /// the constructor form). A leading cause argument is still included; the
    /// message rules drop it for failure types.
    pub message_arg_count: usize,
    pub enclosing_throws: Vec<String>,
    pub enclosing_method: String,
    pub enclosing: MethodContext,
    pub location: SourceLocation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedType {
    pub qname: String,
    pub package: String,
    pub file: String,
    /// Resolved superclass, or the raw `extends` text if it could not be
    /// resolved.
    pub extends: Option<String>,
    pub decl: TypeDecl,
}

/// Every type declared in the corpus, by qualified and by simple name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TypeIndex {
    by_qname: BTreeMap<String, IndexedType>,
    by_simple: BTreeMap<String, Vec<String>>,
}

impl TypeIndex {
    pub fn get(&self, qname: &str) -> Option<&IndexedType> {
        self.by_qname.get(qname)
    }

    pub fn contains(&self, qname: &str) -> bool {
        self.by_qname.contains_key(qname)
    }

    /// Qualified names of all corpus types with this simple name.
    pub fn by_simple_name(&self, name: &str) -> &[String] {
        self.by_simple.get(name).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = &IndexedType> {
        self.by_qname.values()
    }

    pub fn len(&self) -> usize {
        self.by_qname.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_qname.is_empty()
    }

    /// `qname` followed by its superclasses, as far as the corpus knows them.
    pub fn ancestors(&self, qname: &str) -> Vec<String> {
        let mut chain = vec![qname.to_string()];
        let mut current = qname;
        while let Some(parent) = self.get(current).and_then(|t| t.extends.as_deref()) {
            if chain.iter().any(|c| c == parent) {
                break;
            }
            chain.push(parent.to_string());
            current = parent;
        }
        chain
    }

    pub fn is_subtype_of_any(&self, qname: &str, bases: &BTreeSet<String>) -> bool {
        self.ancestors(qname).iter().any(|a| bases.contains(a))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Facts {
    pub type_index: TypeIndex,
    pub call_facts: Vec<CallFact>,
    pub assign_facts: Vec<AssignFact>,
    pub throw_facts: Vec<ThrowFact>,
    /// Doc comment templates by qualified type name.
    pub templates: BTreeMap<String, String>,
}

/// The configuration-dependent parts of extraction.
#[derive(Debug, Clone)]
pub struct FactOptions {
    pub mutator_method_patterns: Vec<NameGlob>,
    pub throw_helper_names: BTreeSet<String>,
}

impl Default for FactOptions {
    fn default() -> Self {
        Self::from(&RuleConfig::default())
    }
}

impl From<&RuleConfig> for FactOptions {
    fn from(cfg: &RuleConfig) -> Self {
        Self {
            mutator_method_patterns: cfg.mutator_method_patterns.clone(),
            throw_helper_names: cfg.throw_helper_names.clone(),
        }
    }
}

pub fn extract_facts(units: &[CompilationUnit]) -> Facts {
    extract_facts_with(units, &FactOptions::default())
}

pub fn extract_facts_with(units: &[CompilationUnit], opts: &FactOptions) -> Facts {
    let mut facts = Facts {
        type_index: build_index(units),
        ..Facts::default()
    };
    for unit in units {
        let scope = UnitScope {
            package: &unit.package_name,
            imports: &unit.imports,
            index: &facts.type_index,
        };
        let mut sink = Sink::default();
        for ty in &unit.types {
            let mut walker = Walker {
                scope: &scope,
                opts,
                file: &unit.file,
                ty,
                type_qname: format!("{}.{}", unit.package_name, ty.name),
                method: MethodContext {
                    package: unit.package_name.clone(),
                    type_name: ty.name.clone(),
                    method_name: String::new(),
                    method_is_mutator: false,
                    method_is_constructor: false,
                },
                throws: Vec::new(),
                locals: Vec::new(),
                sink: &mut sink,
            };
            walker.walk_type();
        }
        facts.call_facts.extend(sink.calls);
        facts.assign_facts.extend(sink.assigns);
        facts.throw_facts.extend(sink.throws);
    }
    facts.templates = facts
        .type_index
        .iter()
        .filter_map(|t| Some((t.qname.clone(), t.decl.doc_template.clone()?)))
        .collect();
    facts
}

fn build_index(units: &[CompilationUnit]) -> TypeIndex {
    let mut index = TypeIndex::default();
    for unit in units {
        for ty in &unit.types {
            let qname = format!("{}.{}", unit.package_name, ty.name);
            if index.by_qname.contains_key(&qname) {
                continue;
            }
            index
                .by_simple
                .entry(ty.name.clone())
                .or_default()
                .push(qname.clone());
            index.by_qname.insert(
                qname.clone(),
                IndexedType {
                    qname,
                    package: unit.package_name.clone(),
                    file: unit.file.clone(),
                    extends: None,
                    decl: ty.clone(),
                },
            );
        }
    }
    // Superclasses resolve against the full index.
    let mut resolved = Vec::new();
    for unit in units {
        let scope = UnitScope {
            package: &unit.package_name,
            imports: &unit.imports,
            index: &index,
        };
        for ty in &unit.types {
            let qname = format!("{}.{}", unit.package_name, ty.name);
            if index.get(&qname).map(|t| &t.file) != Some(&unit.file) {
                continue;
            }
            if let Some(ext) = &ty.extends_name {
                resolved.push((qname, scope.resolve_or_raw(ext)));
            }
        }
    }
    for (qname, ext) in resolved {
        if let Some(t) = index.by_qname.get_mut(&qname) {
            t.extends = Some(ext);
        }
    }
    index
}

struct UnitScope<'a> {
    package: &'a str,
    imports: &'a [Import],
    index: &'a TypeIndex,
}

impl UnitScope<'_> {
    /// Resolves a type reference to a qualified name: single-type imports,
    /// then the unit's own package, then wildcard imports of corpus packages.
    /// Dotted names are taken as already qualified. Array types do not
    /// resolve.
    fn resolve_type(&self, text: &str) -> Option<String> {
        if text.contains('[') {
            return None;
        }
        let base = text.split('<').next().unwrap_or(text).trim();
        if base.is_empty() {
            return None;
        }
        if base.contains('.') {
            return Some(base.to_string());
        }
        let imported = self
            .imports
            .iter()
            .find(|i| !i.is_static && !i.is_wildcard && i.qname.rsplit('.').next() == Some(base));
        if let Some(i) = imported {
            return Some(i.qname.clone());
        }
        let local = format!("{}.{}", self.package, base);
        if self.index.contains(&local) {
            return Some(local);
        }
        self.imports
            .iter()
            .filter(|i| !i.is_static && i.is_wildcard)
            .map(|i| format!("{}.{}", i.qname, base))
            .find(|q| self.index.contains(q))
    }

    fn resolve_or_raw(&self, text: &str) -> String {
        self.resolve_type(text)
            .unwrap_or_else(|| text.split('<').next().unwrap_or(text).trim().to_string())
    }
}

#[derive(Default)]
struct Sink {
    calls: Vec<CallFact>,
    assigns: Vec<AssignFact>,
    throws: Vec<ThrowFact>,
}

struct Walker<'a, 's> {
    scope: &'a UnitScope<'s>,
    opts: &'a FactOptions,
    file: &'a str,
    ty: &'a TypeDecl,
    type_qname: String,
    method: MethodContext,
    throws: Vec<String>,
    /// Innermost scope last; parameters live in the first scope.
    locals: Vec<Vec<(String, String)>>,
    sink: &'a mut Sink,
}

impl Walker<'_, '_> {
    fn loc(&self, pos: Pos) -> SourceLocation {
        SourceLocation::new(self.file, pos)
    }

    fn is_mutator(&self, name: &str) -> bool {
        self.opts
            .mutator_method_patterns
            .iter()
            .any(|g| g.matches(name))
    }

    fn enter_method(&mut self, name: &str, is_constructor: bool) {
        self.method.method_name = name.to_string();
        self.method.method_is_constructor = is_constructor;
        self.method.method_is_mutator = self.is_mutator(name);
    }

    /// Members are visited in source order so facts come out ordered by
    /// location.
    fn walk_type(&mut self) {
        let ty = self.ty;
        let mut members: Vec<(Pos, Option<&FieldDecl>, Option<&MethodDecl>)> = ty
            .fields
            .iter()
            .filter(|f| f.init.is_some())
            .map(|f| (f.pos, Some(f), None))
            .chain(ty.methods.iter().map(|m| (m.pos, None, Some(m))))
            .collect();
        members.sort_by_key(|(pos, _, _)| *pos);
        for (_, field, method) in members {
            if let Some(init) = field.and_then(|f| f.init.as_ref()) {
                self.enter_method("<init>", true);
                self.throws.clear();
                self.locals = vec![Vec::new()];
                self.expr(init);
            }
            let Some(m) = method else { continue };
            self.enter_method(&m.name, m.is_constructor);
            self.throws = m
                .throws_list
                .iter()
                .map(|t| self.scope.resolve_or_raw(t))
                .collect();
            self.locals = vec![m
                .params
                .iter()
                .map(|p| {
                    let ty = if p.is_variadic {
                        format!("{}[]", p.type_text)
                    } else {
                        p.type_text.clone()
                    };
                    (p.name.clone(), ty)
                })
                .collect()];
            if let Some(body) = &m.body {
                self.stmts(body);
            }
        }
    }

    fn local_type(&self, name: &str) -> Option<&str> {
        self.locals
            .iter()
            .rev()
            .flat_map(|scope| scope.iter().rev())
            .find(|(n, _)| n == name)
            .map(|(_, t)| t.as_str())
    }

    fn field_type(&self, name: &str) -> Option<&str> {
        self.ty
            .fields
            .iter()
            .find(|f| f.name == name)
            .map(|f| f.type_text.as_str())
    }

    fn declare(&mut self, name: &str, type_text: &str) {
        if let Some(scope) = self.locals.last_mut() {
            scope.push((name.to_string(), type_text.to_string()));
        }
    }

    fn scoped(&mut self, f: impl FnOnce(&mut Self)) {
        self.locals.push(Vec::new());
        f(self);
        self.locals.pop();
    }

    fn stmts(&mut self, stmts: &[Stmt]) {
        self.scoped(|w| {
            for s in stmts {
                w.stmt(s);
            }
        });
    }

    fn stmt(&mut self, stmt: &Stmt) {
        match &stmt.kind {
            StmtKind::Assign { target, value } => self.assignment(target, value),
            StmtKind::Expr(e) => self.expr(e),
            StmtKind::Throw(e) => {
                if let ExprKind::New { type_text, args } = &e.kind {
                    self.throw_fact(
                        type_text,
                        ThrowForm::Constructor,
                        None,
                        args.len(),
                        stmt.pos,
                    );
                }
                self.expr(e);
            }
            StmtKind::Return(e) => {
                if let Some(e) = e {
                    self.expr(e);
                }
            }
            StmtKind::If {
                cond,
                then_branch,
                else_branch,
            } => {
                self.expr(cond);
                self.scoped(|w| w.stmt(then_branch));
                if let Some(e) = else_branch {
                    self.scoped(|w| w.stmt(e));
                }
            }
            StmtKind::Try { body, catches } => {
                self.stmts(body);
                for c in catches {
                    self.scoped(|w| {
                        w.declare(&c.var_name, &c.exc_type_text);
                        w.stmts(&c.body);
                    });
                }
            }
            StmtKind::LocalVar {
                name,
                type_text,
                init,
            } => {
                if let Some(init) = init {
                    self.expr(init);
                }
                self.declare(name, type_text);
            }
            StmtKind::For { header_raw, body } => self.scoped(|w| {
                if let Some((name, ty)) = for_header_var(header_raw) {
                    w.declare(&name, &ty);
                }
                w.stmt(body);
            }),
            StmtKind::Block(stmts) => self.stmts(stmts),
        }
    }

    fn assignment(&mut self, target: &Expr, value: &Expr) {
        let (target_kind, field_name) = match &target.kind {
            ExprKind::Name(n) if self.local_type(n).is_some() => (TargetKind::Local, None),
            ExprKind::Name(n) if self.field_type(n).is_some() => {
                (TargetKind::OwnField, Some(n.clone()))
            }
            ExprKind::FieldAccess { receiver, name } => {
                if matches!(receiver.kind, ExprKind::This) {
                    (TargetKind::OwnField, Some(name.clone()))
                } else {
                    (TargetKind::Other, Some(name.clone()))
                }
            }
            _ => (TargetKind::Other, None),
        };
        self.sink.assigns.push(AssignFact {
            enclosing: self.method.clone(),
            target_kind,
            field_name,
            location: self.loc(target.pos),
        });
        if let ExprKind::FieldAccess { receiver, .. } = &target.kind {
            self.expr(receiver);
        }
        self.expr(value);
    }

    fn throw_fact(
        &mut self,
        type_text: &str,
        form: ThrowForm,
        helper_name: Option<&str>,
        message_arg_count: usize,
        pos: Pos,
    ) {
        self.sink.throws.push(ThrowFact {
            exc_type_qname: self.scope.resolve_or_raw(type_text),
            form,
            helper_name: helper_name.map(str::to_string),
            message_arg_count,
            enclosing_throws: self.throws.clone(),
            enclosing_method: self.method.method_name.clone(),
            enclosing: self.method.clone(),
            location: self.loc(pos),
        });
    }

    fn expr(&mut self, expr: &Expr) {
        match &expr.kind {
            ExprKind::Name(_)
            | ExprKind::This
            | ExprKind::Literal(_)
            | ExprKind::ClassLiteral { .. } => {}
            ExprKind::FieldAccess { receiver, .. } => self.expr(receiver),
            ExprKind::Call {
                receiver,
                method_name,
                args,
                name_pos,
                ..
            } => {
                if let Some(r) = receiver {
                    self.expr(r);
                }
                let (receiver_kind, receiver_name, callee_type_qname) = match receiver {
                    Some(r) => self.classify_receiver(r),
                    None => self.classify_unqualified(method_name),
                };
                self.sink.calls.push(CallFact {
                    caller: self.method.clone(),
                    receiver_kind,
                    receiver_name,
                    callee_type_qname,
                    callee_method_name: method_name.clone(),
                    arg_count: args.len(),
                    location: self.loc(*name_pos),
                });
                if self.opts.throw_helper_names.contains(method_name) {
                    if let Some(ExprKind::ClassLiteral { type_text }) =
                        args.first().map(|a| &a.kind)
                    {
                        self.throw_fact(
                            type_text,
                            ThrowForm::Helper,
                            Some(method_name),
                            args.len() - 1,
                            *name_pos,
                        );
                    }
                }
                for a in args {
                    self.expr(a);
                }
            }
            ExprKind::New { type_text, args } => {
                let simple = type_text
                    .split('<')
                    .next()
                    .unwrap_or(type_text)
                    .rsplit('.')
                    .next()
                    .unwrap_or(type_text)
                    .to_string();
                self.sink.calls.push(CallFact {
                    caller: self.method.clone(),
                    receiver_kind: ReceiverKind::NewExpr,
                    receiver_name: None,
                    callee_type_qname: self.scope.resolve_type(type_text),
                    callee_method_name: simple,
                    arg_count: args.len(),
                    location: self.loc(expr.pos),
                });
                for a in args {
                    self.expr(a);
                }
            }
            ExprKind::Unary { operand, .. } => self.expr(operand),
            ExprKind::Binary { lhs, rhs, .. } => {
                self.expr(lhs);
                self.expr(rhs);
            }
            ExprKind::InstanceOf { expr, .. } => self.expr(expr),
            ExprKind::Assign { target, value } => self.assignment(target, value),
        }
    }

    fn classify_receiver(&self, r: &Expr) -> (ReceiverKind, Option<String>, Option<String>) {
        match &r.kind {
            ExprKind::This => (ReceiverKind::This, None, Some(self.type_qname.clone())),
            ExprKind::Name(n) => {
                if let Some(t) = self.local_type(n) {
                    (
                        ReceiverKind::SimpleName,
                        Some(n.clone()),
                        self.scope.resolve_type(t),
                    )
                } else if let Some(t) = self.field_type(n) {
                    (
                        ReceiverKind::FieldOfThis,
                        Some(n.clone()),
                        self.scope.resolve_type(t),
                    )
                } else if let Some(q) = self.scope.resolve_type(n) {
                    (ReceiverKind::StaticType, Some(n.clone()), Some(q))
                } else {
                    (ReceiverKind::Unresolved, Some(n.clone()), None)
                }
            }
            ExprKind::FieldAccess { receiver, name } if matches!(receiver.kind, ExprKind::This) => {
                let t = self
                    .field_type(name)
                    .and_then(|t| self.scope.resolve_type(t));
                (ReceiverKind::FieldOfThis, Some(name.clone()), t)
            }
            ExprKind::FieldAccess { .. } => {
                let dotted = r.dotted_name();
                let head_is_var = dotted
                    .as_deref()
                    .and_then(|d| d.split('.').next())
                    .is_some_and(|h| self.local_type(h).is_some() || self.field_type(h).is_some());
                match dotted {
                    Some(d) if !head_is_var && self.scope.index.contains(&d) => {
                        (ReceiverKind::StaticType, None, Some(d))
                    }
                    _ => (ReceiverKind::Unresolved, None, None),
                }
            }
            ExprKind::New { type_text, .. } => (
                ReceiverKind::NewExpr,
                None,
                self.scope.resolve_type(type_text),
            ),
            ExprKind::Call { .. } => (ReceiverKind::CallResult, None, None),
            _ => (ReceiverKind::Unresolved, None, None),
        }
    }

    /// Unqualified `m(..)`: a method of the enclosing type, a statically
    /// imported method, or otherwise an inherited method of `this`.
    fn classify_unqualified(&self, method: &str) -> (ReceiverKind, Option<String>, Option<String>) {
        if method == "super" {
            let parent = self
                .ty
                .extends_name
                .as_deref()
                .and_then(|e| self.scope.resolve_type(e));
            return (ReceiverKind::This, None, parent);
        }
        if self.ty.methods.iter().any(|m| m.name == method) {
            return (ReceiverKind::This, None, Some(self.type_qname.clone()));
        }
        let statics: Vec<&Import> = self.scope.imports.iter().filter(|i| i.is_static).collect();
        let exact = statics
            .iter()
            .find(|i| !i.is_wildcard && i.qname.rsplit('.').next() == Some(method));
        if let Some(i) = exact {
            let owner = i.qname.rsplit_once('.').map(|(o, _)| o.to_string());
            return (ReceiverKind::StaticType, None, owner);
        }
        let wildcards: Vec<&&Import> = statics.iter().filter(|i| i.is_wildcard).collect();
        match wildcards.as_slice() {
            [] => (ReceiverKind::This, None, Some(self.type_qname.clone())),
            [only] => (ReceiverKind::StaticType, None, Some(only.qname.clone())),
            many => {
                let owner = many.iter().find(|i| {
                    self.scope
                        .index
                        .get(&i.qname)
                        .is_some_and(|t| t.decl.methods.iter().any(|m| m.name == method))
                });
                match owner {
                    Some(i) => (ReceiverKind::StaticType, None, Some(i.qname.clone())),
                    None => (ReceiverKind::Unresolved, None, None),
                }
            }
        }
    }
}

/// Loop variable of a raw `for` header such as `final Group element:groups`
/// or `int i = 0; i < n; i++`.
fn for_header_var(header: &str) -> Option<(String, String)> {
    let decl = header.split([';', ':']).next()?;
    let decl = decl.split('=').next()?.trim();
    let decl = decl.strip_prefix("final ").unwrap_or(decl).trim();
    let name_start = decl
        .char_indices()
        .rev()
        .take_while(|(_, c)| c.is_alphanumeric() || *c == '_' || *c == '$')
        .last()
        .map(|(i, _)| i)?;
    let (ty, name) = decl.split_at(name_start);
    let ty = ty.trim();
    (!ty.is_empty() && !name.is_empty()).then(|| (name.to_string(), ty.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minij::parse_unit;

    fn facts_of(sources: &[&str]) -> Facts {
        let units: Vec<_> = sources
            .iter()
            .enumerate()
            .map(|(i, s)| parse_unit(s, &format!("f{i}.minij")).unwrap())
            .collect();
        extract_facts(&units)
    }

    #[test]
    fn local_receiver_resolves_to_declared_type() {
        let f = facts_of(&[
            "package user.lg; class Person { void promoteMut() {} }",
            "package user.ui; import user.lg.Person; class V { void show() { Person person = load(); person.promoteMut(); } }",
        ]);
        let call = f
            .call_facts
            .iter()
            .find(|c| c.callee_method_name == "promoteMut")
            .unwrap();
        assert_eq!(call.receiver_kind, ReceiverKind::SimpleName);
        assert_eq!(call.receiver_name.as_deref(), Some("person"));
        assert_eq!(call.callee_type_qname.as_deref(), Some("user.lg.Person"));
    }

    #[test]
    fn undeclared_exc_throw_fact() {
        let f = facts_of(&[r#"package fb6.user.lg;
            class PersonService {
                public Person getPersonByUsername(final String username)
                throws PersonNotFoundExc, PersonKeyNotUniqueExc {
                    if(username==null) {
                        throw new UsernameNullExc();
                    }
                    return _getPersonByKey("username", username);
                }
            }
            class PersonNotFoundExc extends multex.Exc {}
            class PersonKeyNotUniqueExc extends multex.Exc {}
            class UsernameNullExc extends multex.Exc {}"#]);
        assert_eq!(f.throw_facts.len(), 1);
        let t = &f.throw_facts[0];
        assert_eq!(t.form, ThrowForm::Constructor);
        assert_eq!(t.message_arg_count, 0);
        assert_eq!(t.exc_type_qname, "fb6.user.lg.UsernameNullExc");
        assert_eq!(
            t.enclosing_throws,
            vec![
                "fb6.user.lg.PersonNotFoundExc".to_string(),
                "fb6.user.lg.PersonKeyNotUniqueExc".to_string()
            ]
        );
        assert_eq!(t.enclosing_method, "getPersonByUsername");
        assert_eq!((t.location.line, t.location.column), (6, 25));
    }

    #[test]
    fn empty_bodies_give_no_facts() {
        let f = facts_of(&["package p; class A { void m() {} }"]);
        assert!(f.call_facts.is_empty() && f.assign_facts.is_empty() && f.throw_facts.is_empty());
        assert_eq!(f.type_index.len(), 1);
    }

    #[test]
    fn receiver_kinds() {
        let f = facts_of(&[r#"package p;
            import q.Util;
            class A {
                B fieldMut;
                void m(B param) {
                    this.a();
                    b();
                    param.c();
                    fieldMut.d();
                    this.fieldMut.e();
                    new B().f();
                    Util.g();
                    h().i();
                    unknown.j();
                    "s".k();
                }
                void a() {}
                void b() {}
            }
            class B {}"#]);
        let kind = |name: &str| {
            let c = f
                .call_facts
                .iter()
                .find(|c| c.callee_method_name == name)
                .unwrap();
            (c.receiver_kind, c.callee_type_qname.clone())
        };
        assert_eq!(kind("a"), (ReceiverKind::This, Some("p.A".into())));
        assert_eq!(kind("b"), (ReceiverKind::This, Some("p.A".into())));
        assert_eq!(kind("c"), (ReceiverKind::SimpleName, Some("p.B".into())));
        assert_eq!(kind("d"), (ReceiverKind::FieldOfThis, Some("p.B".into())));
        assert_eq!(kind("e"), (ReceiverKind::FieldOfThis, Some("p.B".into())));
        assert_eq!(kind("f"), (ReceiverKind::NewExpr, Some("p.B".into())));
        assert_eq!(kind("B"), (ReceiverKind::NewExpr, Some("p.B".into())));
        assert_eq!(kind("g"), (ReceiverKind::StaticType, Some("q.Util".into())));
        assert_eq!(kind("i"), (ReceiverKind::CallResult, None));
        assert_eq!(kind("j"), (ReceiverKind::Unresolved, None));
        assert_eq!(kind("k"), (ReceiverKind::Unresolved, None));
    }

    #[test]
    fn static_import_helpers_and_throw_facts() {
        let f = facts_of(&[r#"package p;
            import static multex.MultexUtil.*;
            /**User {0} does not have the right to access file {1}.*/
            class FileAccessRightExc extends multex.Exc {}
            class C {
                void doAccess43() throws FileAccessRightExc {
                    if(!fileAccessAllowed(username, file)){
                        throwNew(FileAccessRightExc.class, username, file);
                    }
                }
                void other() { throw create(FileAccessRightExc.class, a); }
            }"#]);
        let helper = f
            .call_facts
            .iter()
            .find(|c| c.callee_method_name == "throwNew")
            .unwrap();
        assert_eq!(helper.receiver_kind, ReceiverKind::StaticType);
        assert_eq!(
            helper.callee_type_qname.as_deref(),
            Some("multex.MultexUtil")
        );
        assert_eq!(f.throw_facts.len(), 2);
        assert_eq!(f.throw_facts[0].form, ThrowForm::Helper);
        assert_eq!(f.throw_facts[0].message_arg_count, 2);
        assert_eq!(f.throw_facts[0].exc_type_qname, "p.FileAccessRightExc");
        assert_eq!(f.throw_facts[1].helper_name.as_deref(), Some("create"));
        assert_eq!(
            f.templates.get("p.FileAccessRightExc").map(String::as_str),
            Some("User {0} does not have the right to access file {1}.")
        );
        assert_eq!(
            f.type_index
                .get("p.FileAccessRightExc")
                .unwrap()
                .extends
                .as_deref(),
            Some("multex.Exc")
        );
    }

    #[test]
    fn assignment_targets() {
        let f = facts_of(&[r#"package p;
            class A {
                String name;
                void m(String arg) {
                    this.name = "a";
                    name = "b";
                    String name = "shadow";
                    name = "c";
                    arg = "d";
                    other.x = "e";
                }
            }"#]);
        let kinds: Vec<_> = f.assign_facts.iter().map(|a| a.target_kind).collect();
        assert_eq!(
            kinds,
            vec![
                TargetKind::OwnField,
                TargetKind::OwnField,
                TargetKind::Local,
                TargetKind::Local,
                TargetKind::Other
            ]
        );
    }

    #[test]
    fn for_header_declares_loop_variable() {
        assert_eq!(
            for_header_var("final Group element:KNOWN_GROUPS"),
            Some(("element".into(), "Group".into()))
        );
        assert_eq!(
            for_header_var("int i=0;i<n;i+1"),
            Some(("i".into(), "int".into()))
        );
        assert_eq!(for_header_var(";;"), None);
        let f = facts_of(&[r#"package p;
            class Group { String getName() { return null; } }
            class S { void s() { for (final Group element: KNOWN) { element.getName(); } } }"#]);
        let c = f
            .call_facts
            .iter()
            .find(|c| c.callee_method_name == "getName")
            .unwrap();
        assert_eq!(c.receiver_kind, ReceiverKind::SimpleName);
        assert_eq!(c.callee_type_qname.as_deref(), Some("p.Group"));
    }

    #[test]
    fn ancestors_stop_on_cycles() {
        let f = facts_of(&["package p; class A extends B {} class B extends A {}"]);
        assert_eq!(
            f.type_index.ancestors("p.A"),
            vec!["p.A".to_string(), "p.B".to_string()]
        );
    }
}
