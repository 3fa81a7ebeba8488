use super::ast::*;
use super::lexer::{tokenize, Keyword, Punct, Token, TokenKind};
use super::SyntaxError;

/// Parses one MiniJ source file.
///
/// Parsing stops at the first token sequence outside the grammar.
pub fn parse_unit(source: &str, file: &str) -> Result<CompilationUnit, SyntaxError> {
    let tokens = tokenize(source, file)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        file,
    };
    parser.unit()
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    file: &'a str,
}

type PResult<T> = Result<T, SyntaxError>;

impl<'a> Parser<'a> {
    // ---- token access ----

    fn peek(&self) -> &TokenKind {
        &self.tokens[self.pos].kind
    }

    fn peek_at(&self, n: usize) -> &TokenKind {
        let i = (self.pos + n).min(self.tokens.len() - 1);
        &self.tokens[i].kind
    }

    fn here(&self) -> Pos {
        self.tokens[self.pos].pos
    }

    fn advance(&mut self) -> &Token {
        let t = &self.tokens[self.pos];
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: impl Into<String>) -> PResult<T> {
        let tok = &self.tokens[self.pos];
        Err(SyntaxError::new(
            self.file,
            tok.pos,
            expected,
            tok.kind.describe(),
        ))
    }

    fn at_punct(&self, p: Punct) -> bool {
        matches!(self.peek(), TokenKind::Punct(q) if *q == p)
    }

    fn at_keyword(&self, k: Keyword) -> bool {
        matches!(self.peek(), TokenKind::Keyword(q) if *q == k)
    }

    fn eat_punct(&mut self, p: Punct) -> bool {
        if self.at_punct(p) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn eat_keyword(&mut self, k: Keyword) -> bool {
        if self.at_keyword(k) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, p: Punct) -> PResult<Pos> {
        let pos = self.here();
        if self.eat_punct(p) {
            Ok(pos)
        } else {
            self.error(format!("`{}`", p.as_str()))
        }
    }

    fn expect_keyword(&mut self, k: Keyword) -> PResult<Pos> {
        let pos = self.here();
        if self.eat_keyword(k) {
            Ok(pos)
        } else {
            self.error(format!("`{}`", k.as_str()))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            TokenKind::Ident(s) => {
                let s = s.clone();
                self.advance();
                Ok(s)
            }
            _ => self.error("identifier"),
        }
    }

    /// Joins the spelling of tokens `[from, to)` with a single space between
    /// adjacent word-like tokens and no space elsewhere.
    fn text_between(&self, from: usize, to: usize) -> String {
        let mut out = String::new();
        let mut prev_word = false;
        for tok in &self.tokens[from..to] {
            let word = tok.kind.is_wordlike();
            if word && prev_word {
                out.push(' ');
            }
            out.push_str(tok.kind.text());
            prev_word = word;
        }
        out
    }

    // ---- declarations ----

    fn unit(&mut self) -> PResult<CompilationUnit> {
        self.expect_keyword(Keyword::Package)?;
        let package_name = self.qname()?;
        self.expect_punct(Punct::Semi)?;

        let mut imports = Vec::new();
        while self.at_keyword(Keyword::Import) {
            imports.push(self.import()?);
        }
        let mut types = Vec::new();
        while !matches!(self.peek(), TokenKind::Eof) {
            types.push(self.type_decl()?);
        }
        Ok(CompilationUnit {
            file: self.file.to_string(),
            package_name,
            imports,
            types,
        })
    }

    fn qname(&mut self) -> PResult<String> {
        let mut name = self.ident()?;
        while self.at_punct(Punct::Dot) && matches!(self.peek_at(1), TokenKind::Ident(_)) {
            self.advance();
            name.push('.');
            name.push_str(&self.ident()?);
        }
        Ok(name)
    }

    fn import(&mut self) -> PResult<Import> {
        let pos = self.expect_keyword(Keyword::Import)?;
        let is_static = self.eat_keyword(Keyword::Static);
        let qname = self.qname()?;
        let mut is_wildcard = false;
        if self.eat_punct(Punct::Dot) {
            self.expect_punct(Punct::Star)?;
            is_wildcard = true;
        }
        self.expect_punct(Punct::Semi)?;
        Ok(Import {
            qname,
            is_static,
            is_wildcard,
            pos,
        })
    }

    fn annotations(&mut self) -> PResult<Vec<String>> {
        let mut anns = Vec::new();
        while self.eat_punct(Punct::At) {
            anns.push(self.ident()?);
        }
        Ok(anns)
    }

    fn modifiers(&mut self) {
        while let TokenKind::Keyword(
            Keyword::Public
            | Keyword::Private
            | Keyword::Protected
            | Keyword::Static
            | Keyword::Final
            | Keyword::Abstract,
        ) = self.peek()
        {
            self.advance();
        }
    }

    fn type_decl(&mut self) -> PResult<TypeDecl> {
        let doc_template = self.tokens[self.pos].doc.clone();
        let annotations = self.annotations()?;
        self.modifiers();
        let pos = self.expect_keyword(Keyword::Class)?;
        let name = self.ident()?;
        let extends_name = if self.eat_keyword(Keyword::Extends) {
            Some(self.qname()?)
        } else {
            None
        };
        self.expect_punct(Punct::LBrace)?;
        let mut fields = Vec::new();
        let mut methods = Vec::new();
        while !self.eat_punct(Punct::RBrace) {
            if matches!(self.peek(), TokenKind::Eof) {
                return self.error("`}` closing the class body");
            }
            match self.member(&name)? {
                Member::Field(f) => fields.push(f),
                Member::Method(m) => methods.push(m),
            }
        }
        Ok(TypeDecl {
            name,
            doc_template,
            extends_name,
            annotations,
            fields,
            methods,
            pos,
        })
    }

    fn member(&mut self, type_name: &str) -> PResult<Member> {
        let doc_template = self.tokens[self.pos].doc.clone();
        let annotations = self.annotations()?;
        self.modifiers();

        let pos = self.here();
        let (name, return_type, is_constructor) = if self.eat_keyword(Keyword::Void) {
            (self.ident()?, None, false)
        } else if matches!(self.peek(), TokenKind::Ident(_))
            && matches!(self.peek_at(1), TokenKind::Punct(Punct::LParen))
        {
            let name = self.ident()?;
            if name != type_name {
                self.pos -= 1;
                return self.error("method return type");
            }
            (name, None, true)
        } else {
            let ty = self.typeref()?;
            let name_pos = self.here();
            let name = self.ident()?;
            if !self.at_punct(Punct::LParen) {
                let init = if self.eat_punct(Punct::Assign) {
                    Some(self.expr()?)
                } else {
                    None
                };
                self.expect_punct(Punct::Semi)?;
                return Ok(Member::Field(FieldDecl {
                    name,
                    type_text: ty,
                    annotations,
                    init,
                    pos: name_pos,
                }));
            }
            (name, Some(ty), false)
        };

        self.expect_punct(Punct::LParen)?;
        let mut params = Vec::new();
        if !self.at_punct(Punct::RParen) {
            loop {
                let param = self.param()?;
                let variadic = param.is_variadic;
                params.push(param);
                if !self.eat_punct(Punct::Comma) {
                    break;
                }
                if variadic {
                    return self.error("`)` after variadic parameter");
                }
            }
        }
        self.expect_punct(Punct::RParen)?;

        let mut throws_list = Vec::new();
        if self.eat_keyword(Keyword::Throws) {
            throws_list.push(self.qname()?);
            while self.eat_punct(Punct::Comma) {
                throws_list.push(self.qname()?);
            }
        }
        let body = if self.eat_punct(Punct::Semi) {
            None
        } else if self.at_punct(Punct::LBrace) {
            Some(self.block()?)
        } else {
            return self.error("method body or `;`");
        };

        Ok(Member::Method(MethodDecl {
            name,
            is_constructor,
            return_type,
            params,
            throws_list,
            annotations,
            doc_template,
            body,
            pos,
        }))
    }

    fn param(&mut self) -> PResult<Param> {
        let annotations = self.annotations()?;
        self.eat_keyword(Keyword::Final);
        let type_text = self.typeref()?;
        let is_variadic = self.eat_punct(Punct::Ellipsis);
        let name = self.ident()?;
        Ok(Param {
            name,
            type_text,
            is_variadic,
            annotations,
        })
    }

    fn typeref(&mut self) -> PResult<String> {
        let start = self.pos;
        self.qname()?;
        if self.at_punct(Punct::Lt) {
            self.skip_type_args()?;
        }
        while self.at_punct(Punct::LBracket)
            && matches!(self.peek_at(1), TokenKind::Punct(Punct::RBracket))
        {
            self.advance();
            self.advance();
        }
        Ok(self.text_between(start, self.pos))
    }

    /// Consumes a balanced `<...>` and returns the text between the brackets.
    fn skip_type_args(&mut self) -> PResult<String> {
        self.expect_punct(Punct::Lt)?;
        let start = self.pos;
        let mut depth = 1usize;
        loop {
            match self.peek() {
                TokenKind::Punct(Punct::Lt) => depth += 1,
                TokenKind::Punct(Punct::Gt) => {
                    depth -= 1;
                    if depth == 0 {
                        let text = self.text_between(start, self.pos);
                        self.advance();
                        if text.is_empty() {
                            return Err(SyntaxError::new(
                                self.file,
                                self.tokens[start].pos,
                                "type argument",
                                "`>`",
                            ));
                        }
                        return Ok(text);
                    }
                }
                TokenKind::Ident(_)
                | TokenKind::Punct(Punct::Dot | Punct::Comma | Punct::Question | Punct::Amp)
                | TokenKind::Punct(Punct::LBracket | Punct::RBracket)
                | TokenKind::Keyword(Keyword::Extends) => {}
                _ => return self.error("`>` closing type arguments"),
            }
            self.advance();
        }
    }

    // ---- statements ----

    fn block(&mut self) -> PResult<Vec<Stmt>> {
        self.expect_punct(Punct::LBrace)?;
        let mut stmts = Vec::new();
        while !self.eat_punct(Punct::RBrace) {
            if matches!(self.peek(), TokenKind::Eof) {
                return self.error("`}` closing the block");
            }
            stmts.push(self.stmt()?);
        }
        Ok(stmts)
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        let pos = self.here();
        let kind = match self.peek() {
            TokenKind::Punct(Punct::LBrace) => StmtKind::Block(self.block()?),
            TokenKind::Keyword(Keyword::If) => {
                self.advance();
                self.expect_punct(Punct::LParen)?;
                let cond = self.expr()?;
                self.expect_punct(Punct::RParen)?;
                let then_branch = Box::new(self.stmt()?);
                let else_branch = if self.eat_keyword(Keyword::Else) {
                    Some(Box::new(self.stmt()?))
                } else {
                    None
                };
                StmtKind::If {
                    cond,
                    then_branch,
                    else_branch,
                }
            }
            TokenKind::Keyword(Keyword::For) => {
                self.advance();
                self.expect_punct(Punct::LParen)?;
                let start = self.pos;
                let mut depth = 0usize;
                loop {
                    match self.peek() {
                        TokenKind::Punct(Punct::LParen) => depth += 1,
                        TokenKind::Punct(Punct::RParen) if depth == 0 => break,
                        TokenKind::Punct(Punct::RParen) => depth -= 1,
                        TokenKind::Eof | TokenKind::Punct(Punct::LBrace | Punct::RBrace) => {
                            return self.error("`)` closing the for header")
                        }
                        _ => {}
                    }
                    self.advance();
                }
                let header_raw = self.text_between(start, self.pos);
                self.expect_punct(Punct::RParen)?;
                StmtKind::For {
                    header_raw,
                    body: Box::new(self.stmt()?),
                }
            }
            TokenKind::Keyword(Keyword::Try) => {
                self.advance();
                let body = self.block()?;
                let mut catches = Vec::new();
                while self.at_keyword(Keyword::Catch) {
                    let cpos = self.here();
                    self.advance();
                    self.expect_punct(Punct::LParen)?;
                    self.eat_keyword(Keyword::Final);
                    let exc_type_text = self.typeref()?;
                    let var_name = self.ident()?;
                    self.expect_punct(Punct::RParen)?;
                    catches.push(CatchClause {
                        exc_type_text,
                        var_name,
                        body: self.block()?,
                        pos: cpos,
                    });
                }
                if catches.is_empty() {
                    return self.error("`catch`");
                }
                StmtKind::Try { body, catches }
            }
            TokenKind::Keyword(Keyword::Return) => {
                self.advance();
                let value = if self.at_punct(Punct::Semi) {
                    None
                } else {
                    Some(self.expr()?)
                };
                self.expect_punct(Punct::Semi)?;
                StmtKind::Return(value)
            }
            TokenKind::Keyword(Keyword::Throw) => {
                self.advance();
                if !matches!(
                    self.peek(),
                    TokenKind::Keyword(Keyword::New) | TokenKind::Ident(_)
                ) {
                    return self.error("`new` or a method call after `throw`");
                }
                let at = self.pos;
                let e = self.expr()?;
                if !matches!(e.kind, ExprKind::New { .. } | ExprKind::Call { .. }) {
                    self.pos = at;
                    return self.error("`new` or a method call after `throw`");
                }
                self.expect_punct(Punct::Semi)?;
                StmtKind::Throw(e)
            }
            TokenKind::Keyword(Keyword::Final) => {
                self.advance();
                self.local_var()?
            }
            _ => {
                if let Some(kind) = self.try_local_var()? {
                    kind
                } else {
                    let e = self.expr()?;
                    self.expect_punct(Punct::Semi)?;
                    match e.kind {
                        ExprKind::Assign { target, value } => StmtKind::Assign {
                            target: *target,
                            value: *value,
                        },
                        kind => StmtKind::Expr(Expr::new(kind, e.pos)),
                    }
                }
            }
        };
        Ok(Stmt { kind, pos })
    }

    fn local_var(&mut self) -> PResult<StmtKind> {
        let type_text = self.typeref()?;
        let name = self.ident()?;
        let init = if self.eat_punct(Punct::Assign) {
            Some(self.expr()?)
        } else {
            None
        };
        self.expect_punct(Punct::Semi)?;
        Ok(StmtKind::LocalVar {
            name,
            type_text,
            init,
        })
    }

    /// A statement starting with an identifier is a local variable
    /// declaration iff it reads `typeref IDENT` followed by `=` or `;`.
    fn try_local_var(&mut self) -> PResult<Option<StmtKind>> {
        if !matches!(self.peek(), TokenKind::Ident(_)) {
            return Ok(None);
        }
        let save = self.pos;
        let looks_like_decl = self.typeref().is_ok()
            && matches!(self.peek(), TokenKind::Ident(_))
            && matches!(
                self.peek_at(1),
                TokenKind::Punct(Punct::Assign | Punct::Semi)
            );
        self.pos = save;
        if looks_like_decl {
            self.local_var().map(Some)
        } else {
            Ok(None)
        }
    }

    // ---- expressions ----

    fn expr(&mut self) -> PResult<Expr> {
        let lhs = self.binary(0)?;
        if self.at_punct(Punct::Assign) {
            if !matches!(lhs.kind, ExprKind::Name(_) | ExprKind::FieldAccess { .. }) {
                return self.error("assignable expression before `=`");
            }
            self.advance();
            let value = self.expr()?;
            let pos = lhs.pos;
            return Ok(Expr::new(
                ExprKind::Assign {
                    target: Box::new(lhs),
                    value: Box::new(value),
                },
                pos,
            ));
        }
        Ok(lhs)
    }

    /// Precedence climbing over `|| && (== !=) (< > <= >= instanceof) (+ -)`.
    fn binary(&mut self, level: usize) -> PResult<Expr> {
        const LEVELS: &[&[(Punct, BinaryOp)]] = &[
            &[(Punct::OrOr, BinaryOp::Or)],
            &[(Punct::AndAnd, BinaryOp::And)],
            &[(Punct::EqEq, BinaryOp::Eq), (Punct::NotEq, BinaryOp::Ne)],
            &[
                (Punct::Lt, BinaryOp::Lt),
                (Punct::Gt, BinaryOp::Gt),
                (Punct::Le, BinaryOp::Le),
                (Punct::Ge, BinaryOp::Ge),
            ],
            &[(Punct::Plus, BinaryOp::Add), (Punct::Minus, BinaryOp::Sub)],
        ];
        if level == LEVELS.len() {
            return self.unary();
        }
        let mut lhs = self.binary(level + 1)?;
        loop {
            if level == 3 && self.eat_keyword(Keyword::Instanceof) {
                let type_text = self.typeref()?;
                let pos = lhs.pos;
                lhs = Expr::new(
                    ExprKind::InstanceOf {
                        expr: Box::new(lhs),
                        type_text,
                    },
                    pos,
                );
                continue;
            }
            let op = LEVELS[level].iter().find_map(|(p, op)| match self.peek() {
                TokenKind::Punct(q) if q == p => Some(*op),
                _ => None,
            });
            let Some(op) = op else { break };
            self.advance();
            let rhs = self.binary(level + 1)?;
            let pos = lhs.pos;
            lhs = Expr::new(
                ExprKind::Binary {
                    op,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
                pos,
            );
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        let pos = self.here();
        let op = if self.eat_punct(Punct::Bang) {
            UnaryOp::Not
        } else if self.eat_punct(Punct::Minus) {
            UnaryOp::Neg
        } else {
            return self.postfix();
        };
        let operand = self.unary()?;
        Ok(Expr::new(
            ExprKind::Unary {
                op,
                operand: Box::new(operand),
            },
            pos,
        ))
    }

    fn call_args(&mut self) -> PResult<Vec<Expr>> {
        self.expect_punct(Punct::LParen)?;
        let mut args = Vec::new();
        if !self.eat_punct(Punct::RParen) {
            loop {
                args.push(self.expr()?);
                if self.eat_punct(Punct::RParen) {
                    break;
                }
                self.expect_punct(Punct::Comma)?;
            }
        }
        Ok(args)
    }

    fn postfix(&mut self) -> PResult<Expr> {
        let mut e = self.primary()?;
        while self.eat_punct(Punct::Dot) {
            if self.at_keyword(Keyword::Class) {
                let Some(type_text) = e.dotted_name() else {
                    return self.error("member name");
                };
                self.advance();
                e = Expr::new(ExprKind::ClassLiteral { type_text }, e.pos);
                continue;
            }
            let type_args_raw = if self.at_punct(Punct::Lt) {
                Some(self.skip_type_args()?)
            } else {
                None
            };
            let name_pos = self.here();
            let name = self.ident()?;
            let pos = e.pos;
            if type_args_raw.is_some() || self.at_punct(Punct::LParen) {
                let args = self.call_args()?;
                e = Expr::new(
                    ExprKind::Call {
                        receiver: Some(Box::new(e)),
                        method_name: name,
                        args,
                        type_args_raw,
                        name_pos,
                    },
                    pos,
                );
            } else {
                e = Expr::new(
                    ExprKind::FieldAccess {
                        receiver: Box::new(e),
                        name,
                    },
                    pos,
                );
            }
        }
        Ok(e)
    }

    fn primary(&mut self) -> PResult<Expr> {
        let pos = self.here();
        match self.peek().clone() {
            TokenKind::Literal(raw) => {
                self.advance();
                Ok(Expr::new(ExprKind::Literal(raw), pos))
            }
            TokenKind::Keyword(Keyword::This) => {
                self.advance();
                Ok(Expr::new(ExprKind::This, pos))
            }
            TokenKind::Keyword(Keyword::New) => {
                self.advance();
                let type_text = self.typeref()?;
                let args = self.call_args()?;
                Ok(Expr::new(ExprKind::New { type_text, args }, pos))
            }
            TokenKind::Ident(name) => {
                self.advance();
                if self.at_punct(Punct::LParen) {
                    let args = self.call_args()?;
                    Ok(Expr::new(
                        ExprKind::Call {
                            receiver: None,
                            method_name: name,
                            args,
                            type_args_raw: None,
                            name_pos: pos,
                        },
                        pos,
                    ))
                } else {
                    Ok(Expr::new(ExprKind::Name(name), pos))
                }
            }
            TokenKind::Punct(Punct::LParen) => {
                self.advance();
                let mut inner = self.expr()?;
                self.expect_punct(Punct::RParen)?;
                inner.pos = pos;
                Ok(inner)
            }
            _ => self.error("expression"),
        }
    }
}

enum Member {
    Field(FieldDecl),
    Method(MethodDecl),
}
