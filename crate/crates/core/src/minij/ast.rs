//! Syntax tree for MiniJ compilation units.
//!
//! Nodes carry a [`Pos`] (1-based line and character column) into the source
//! text of the unit they were parsed from; the file itself is recorded once on
//! the [`CompilationUnit`].

use std::fmt;

/// A 1-based line/column position inside a single source file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: u32,
    pub column: u32,
}

impl Pos {
    pub const fn new(line: u32, column: u32) -> Self {
        Self { line, column }
    }
}

/// A position qualified with the file it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourceLocation {
    pub file: String,
    pub line: u32,
    pub column: u32,
}

impl SourceLocation {
    pub fn new(file: impl Into<String>, pos: Pos) -> Self {
        Self {
            file: file.into(),
            line: pos.line,
            column: pos.column,
        }
    }

    pub fn pos(&self) -> Pos {
        Pos::new(self.line, self.column)
    }
}

impl fmt::Display for SourceLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompilationUnit {
    pub file: String,
    /// Dotted package name, e.g. `fb6.user.lg`.
    pub package_name: String,
    pub imports: Vec<Import>,
    pub types: Vec<TypeDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Import {
    pub qname: String,
    pub is_static: bool,
    pub is_wildcard: bool,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeDecl {
    pub name: String,
    /// Text of the doc comment directly in front of the declaration, with the
    /// `*` gutters removed.
    pub doc_template: Option<String>,
    pub extends_name: Option<String>,
    pub annotations: Vec<String>,
    pub fields: Vec<FieldDecl>,
    pub methods: Vec<MethodDecl>,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDecl {
    pub name: String,
    pub type_text: String,
    pub annotations: Vec<String>,
    pub init: Option<Expr>,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub type_text: String,
    pub is_variadic: bool,
    pub annotations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodDecl {
    pub name: String,
    pub is_constructor: bool,
    /// `None` for constructors and `void` methods.
    pub return_type: Option<String>,
    pub params: Vec<Param>,
    pub throws_list: Vec<String>,
    pub annotations: Vec<String>,
    pub doc_template: Option<String>,
    /// Absent for abstract declarations (`;` instead of a block).
    pub body: Option<Vec<Stmt>>,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatchClause {
    pub exc_type_text: String,
    pub var_name: String,
    pub body: Vec<Stmt>,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    /// `target = value;` where target is a name or a field access.
    Assign {
        target: Expr,
        value: Expr,
    },
    Expr(Expr),
    /// Always a `New` or `Call` expression.
    Throw(Expr),
    Return(Option<Expr>),
    If {
        cond: Expr,
        then_branch: Box<Stmt>,
        else_branch: Option<Box<Stmt>>,
    },
    Try {
        body: Vec<Stmt>,
        catches: Vec<CatchClause>,
    },
    LocalVar {
        name: String,
        type_text: String,
        init: Option<Expr>,
    },
    For {
        header_raw: String,
        body: Box<Stmt>,
    },
    Block(Vec<Stmt>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Not,
    Neg,
}

impl UnaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            UnaryOp::Not => "!",
            UnaryOp::Neg => "-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Or,
    And,
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
    Add,
    Sub,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Or => "||",
            BinaryOp::And => "&&",
            BinaryOp::Eq => "==",
            BinaryOp::Ne => "!=",
            BinaryOp::Lt => "<",
            BinaryOp::Gt => ">",
            BinaryOp::Le => "<=",
            BinaryOp::Ge => ">=",
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    /// Position of the first token of the expression.
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Name(String),
    This,
    FieldAccess {
        receiver: Box<Expr>,
        name: String,
    },
    Call {
        receiver: Option<Box<Expr>>,
        method_name: String,
        args: Vec<Expr>,
        type_args_raw: Option<String>,
        /// Position of the method name token.
        name_pos: Pos,
    },
    New {
        type_text: String,
        args: Vec<Expr>,
    },
    Literal(String),
    Unary {
        op: UnaryOp,
        operand: Box<Expr>,
    },
    Binary {
        op: BinaryOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    InstanceOf {
        expr: Box<Expr>,
        type_text: String,
    },
    /// `X.class`
    ClassLiteral {
        type_text: String,
    },
    Assign {
        target: Box<Expr>,
        value: Box<Expr>,
    },
}

impl Expr {
    pub fn new(kind: ExprKind, pos: Pos) -> Self {
        Self { kind, pos }
    }

    /// The dotted text of a `Name` or a chain of field accesses on names
    /// (`a.b.C`), if this expression has that shape.
    pub fn dotted_name(&self) -> Option<String> {
        match &self.kind {
            ExprKind::Name(n) => Some(n.clone()),
            ExprKind::FieldAccess { receiver, name } => {
                let mut head = receiver.dotted_name()?;
                head.push('.');
                head.push_str(name);
                Some(head)
            }
            _ => None,
        }
    }
}

impl CompilationUnit {
    /// Resets every position in the tree to the default, leaving only
    /// structure. Two units parsed from differently laid out but equivalent
    /// text compare equal after this.
    pub fn erase_positions(&mut self) {
        for import in &mut self.imports {
            import.pos = Pos::default();
        }
        for ty in &mut self.types {
            ty.pos = Pos::default();
            for field in &mut ty.fields {
                field.pos = Pos::default();
                if let Some(init) = &mut field.init {
                    erase_expr(init);
                }
            }
            for method in &mut ty.methods {
                method.pos = Pos::default();
                if let Some(body) = &mut method.body {
                    body.iter_mut().for_each(erase_stmt);
                }
            }
        }
    }
}

fn erase_stmt(stmt: &mut Stmt) {
    stmt.pos = Pos::default();
    match &mut stmt.kind {
        StmtKind::Assign { target, value } => {
            erase_expr(target);
            erase_expr(value);
        }
        StmtKind::Expr(e) | StmtKind::Throw(e) => erase_expr(e),
        StmtKind::Return(e) => {
            if let Some(e) = e {
                erase_expr(e);
            }
        }
        StmtKind::If {
            cond,
            then_branch,
            else_branch,
        } => {
            erase_expr(cond);
            erase_stmt(then_branch);
            if let Some(e) = else_branch {
                erase_stmt(e);
            }
        }
        StmtKind::Try { body, catches } => {
            body.iter_mut().for_each(erase_stmt);
            for c in catches {
                c.pos = Pos::default();
                c.body.iter_mut().for_each(erase_stmt);
            }
        }
        StmtKind::LocalVar { init, .. } => {
            if let Some(e) = init {
                erase_expr(e);
            }
        }
        StmtKind::For { body, .. } => erase_stmt(body),
        StmtKind::Block(stmts) => stmts.iter_mut().for_each(erase_stmt),
    }
}

fn erase_expr(expr: &mut Expr) {
    expr.pos = Pos::default();
    match &mut expr.kind {
        ExprKind::Name(_)
        | ExprKind::This
        | ExprKind::Literal(_)
        | ExprKind::ClassLiteral { .. } => {}
        ExprKind::FieldAccess { receiver, .. } => erase_expr(receiver),
        ExprKind::Call {
            receiver,
            args,
            name_pos,
            ..
        } => {
            *name_pos = Pos::default();
            if let Some(r) = receiver {
                erase_expr(r);
            }
            args.iter_mut().for_each(erase_expr);
        }
        ExprKind::New { args, .. } => args.iter_mut().for_each(erase_expr),
        ExprKind::Unary { operand, .. } => erase_expr(operand),
        ExprKind::Binary { lhs, rhs, .. } => {
            erase_expr(lhs);
            erase_expr(rhs);
        }
        ExprKind::InstanceOf { expr, .. } => erase_expr(expr),
        ExprKind::Assign { target, value } => {
            erase_expr(target);
            erase_expr(value);
        }
    }
}
