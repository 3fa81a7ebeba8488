//! Canonical MiniJ printer.
//!
//! Output is fully parenthesized and indented with four spaces. Parsing the
//! printed text yields a tree structurally equal to the printed one.

use std::fmt::Write;

use super::ast::*;

pub fn print_unit(unit: &CompilationUnit) -> String {
    let mut p = Printer::default();
    p.unit(unit);
    p.out
}

pub fn print_expr(expr: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, expr);
    out
}

#[derive(Default)]
struct Printer {
    out: String,
    indent: usize,
}

impl Printer {
    fn line(&mut self, text: &str) {
        for _ in 0..self.indent {
            self.out.push_str("    ");
        }
        self.out.push_str(text);
        self.out.push('\n');
    }

    fn doc(&mut self, doc: &Option<String>) {
        if let Some(doc) = doc {
            self.line(&format!("/**{doc}*/"));
        }
    }

    fn annotations(&mut self, anns: &[String]) {
        for a in anns {
            self.line(&format!("@{a}"));
        }
    }

    fn unit(&mut self, unit: &CompilationUnit) {
        self.line(&format!("package {};", unit.package_name));
        for i in &unit.imports {
            let mut s = String::from("import ");
            if i.is_static {
                s.push_str("static ");
            }
            s.push_str(&i.qname);
            if i.is_wildcard {
                s.push_str(".*");
            }
            s.push(';');
            self.line(&s);
        }
        for ty in &unit.types {
            self.type_decl(ty);
        }
    }

    fn type_decl(&mut self, ty: &TypeDecl) {
        self.doc(&ty.doc_template);
        self.annotations(&ty.annotations);
        let mut head = format!("class {}", ty.name);
        if let Some(ext) = &ty.extends_name {
            write!(head, " extends {ext}").unwrap();
        }
        head.push_str(" {");
        self.line(&head);
        self.indent += 1;
        for f in &ty.fields {
            self.annotations(&f.annotations);
            let mut s = format!("{} {}", f.type_text, f.name);
            if let Some(init) = &f.init {
                s.push_str(" = ");
                write_expr(&mut s, init);
            }
            s.push(';');
            self.line(&s);
        }
        for m in &ty.methods {
            self.method(m);
        }
        self.indent -= 1;
        self.line("}");
    }

    fn method(&mut self, m: &MethodDecl) {
        self.doc(&m.doc_template);
        self.annotations(&m.annotations);
        let mut head = String::new();
        if !m.is_constructor {
            head.push_str(m.return_type.as_deref().unwrap_or("void"));
            head.push(' ');
        }
        head.push_str(&m.name);
        head.push('(');
        for (i, p) in m.params.iter().enumerate() {
            if i > 0 {
                head.push_str(", ");
            }
            for a in &p.annotations {
                write!(head, "@{a} ").unwrap();
            }
            head.push_str(&p.type_text);
            if p.is_variadic {
                head.push_str("...");
            }
            write!(head, " {}", p.name).unwrap();
        }
        head.push(')');
        if !m.throws_list.is_empty() {
            write!(head, " throws {}", m.throws_list.join(", ")).unwrap();
        }
        match &m.body {
            None => {
                head.push(';');
                self.line(&head);
            }
            Some(body) => {
                head.push_str(" {");
                self.line(&head);
                self.stmts(body);
                self.line("}");
            }
        }
    }

    fn stmts(&mut self, stmts: &[Stmt]) {
        self.indent += 1;
        for s in stmts {
            self.stmt(s);
        }
        self.indent -= 1;
    }

    fn block(&mut self, head: &str, stmts: &[Stmt]) {
        self.line(&format!("{head}{{"));
        self.stmts(stmts);
        self.line("}");
    }

    /// Nested statement in `if`/`else`/`for` position.
    fn nested(&mut self, head: &str, stmt: &Stmt) {
        if let StmtKind::Block(stmts) = &stmt.kind {
            self.block(&format!("{head} "), stmts);
        } else {
            self.line(head);
            self.indent += 1;
            self.stmt(stmt);
            self.indent -= 1;
        }
    }

    fn stmt(&mut self, stmt: &Stmt) {
        match &stmt.kind {
            StmtKind::Assign { target, value } => {
                let mut s = print_expr(target);
                s.push_str(" = ");
                write_expr(&mut s, value);
                s.push(';');
                self.line(&s);
            }
            StmtKind::Expr(e) => self.line(&format!("{};", print_expr(e))),
            StmtKind::Throw(e) => self.line(&format!("throw {};", print_expr(e))),
            StmtKind::Return(None) => self.line("return;"),
            StmtKind::Return(Some(e)) => self.line(&format!("return {};", print_expr(e))),
            StmtKind::If {
                cond,
                then_branch,
                else_branch,
            } => {
                self.nested(&format!("if ({})", print_expr(cond)), then_branch);
                if let Some(e) = else_branch {
                    self.nested("else", e);
                }
            }
            StmtKind::Try { body, catches } => {
                self.block("try ", body);
                for c in catches {
                    self.block(
                        &format!("catch ({} {}) ", c.exc_type_text, c.var_name),
                        &c.body,
                    );
                }
            }
            StmtKind::LocalVar {
                name,
                type_text,
                init,
            } => {
                let mut s = format!("{type_text} {name}");
                if let Some(init) = init {
                    s.push_str(" = ");
                    write_expr(&mut s, init);
                }
                s.push(';');
                self.line(&s);
            }
            StmtKind::For { header_raw, body } => {
                self.nested(&format!("for ({header_raw})"), body);
            }
            StmtKind::Block(stmts) => self.block("", stmts),
        }
    }
}

fn write_args(out: &mut String, args: &[Expr]) {
    out.push('(');
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_expr(out, a);
    }
    out.push(')');
}

fn write_receiver(out: &mut String, receiver: &Expr) {
    if matches!(receiver.kind, ExprKind::Unary { .. }) {
        out.push('(');
        write_expr(out, receiver);
        out.push(')');
    } else {
        write_expr(out, receiver);
    }
}

fn write_expr(out: &mut String, expr: &Expr) {
    match &expr.kind {
        ExprKind::Name(n) => out.push_str(n),
        ExprKind::This => out.push_str("this"),
        ExprKind::Literal(raw) => out.push_str(raw),
        ExprKind::ClassLiteral { type_text } => write!(out, "{type_text}.class").unwrap(),
        ExprKind::FieldAccess { receiver, name } => {
            write_receiver(out, receiver);
            write!(out, ".{name}").unwrap();
        }
        ExprKind::Call {
            receiver,
            method_name,
            args,
            type_args_raw,
            ..
        } => {
            if let Some(r) = receiver {
                write_receiver(out, r);
                out.push('.');
                if let Some(ta) = type_args_raw {
                    write!(out, "<{ta}>").unwrap();
                }
            }
            out.push_str(method_name);
            write_args(out, args);
        }
        ExprKind::New { type_text, args } => {
            write!(out, "new {type_text}").unwrap();
            write_args(out, args);
        }
        ExprKind::Unary { op, operand } => {
            out.push_str(op.symbol());
            write_expr(out, operand);
        }
        ExprKind::Binary { op, lhs, rhs } => {
            out.push('(');
            write_expr(out, lhs);
            write!(out, " {} ", op.symbol()).unwrap();
            write_expr(out, rhs);
            out.push(')');
        }
        ExprKind::InstanceOf { expr, type_text } => {
            out.push('(');
            write_expr(out, expr);
            write!(out, " instanceof {type_text})").unwrap();
        }
        ExprKind::Assign { target, value } => {
            out.push('(');
            write_expr(out, target);
            out.push_str(" = ");
            write_expr(out, value);
            out.push(')');
        }
    }
}
