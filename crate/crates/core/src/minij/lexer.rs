use super::ast::Pos;
use super::SyntaxError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keyword {
    Package,
    Import,
    Static,
    Class,
    Extends,
    Public,
    Private,
    Protected,
    Final,
    Abstract,
    Void,
    Throws,
    If,
    Else,
    For,
    Try,
    Catch,
    Return,
    Throw,
    New,
    This,
    Instanceof,
}

impl Keyword {
    fn from_ident(s: &str) -> Option<Self> {
        Some(match s {
            "package" => Keyword::Package,
            "import" => Keyword::Import,
            "static" => Keyword::Static,
            "class" => Keyword::Class,
            "extends" => Keyword::Extends,
            "public" => Keyword::Public,
            "private" => Keyword::Private,
            "protected" => Keyword::Protected,
            "final" => Keyword::Final,
            "abstract" => Keyword::Abstract,
            "void" => Keyword::Void,
            "throws" => Keyword::Throws,
            "if" => Keyword::If,
            "else" => Keyword::Else,
            "for" => Keyword::For,
            "try" => Keyword::Try,
            "catch" => Keyword::Catch,
            "return" => Keyword::Return,
            "throw" => Keyword::Throw,
            "new" => Keyword::New,
            "this" => Keyword::This,
            "instanceof" => Keyword::Instanceof,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Keyword::Package => "package",
            Keyword::Import => "import",
            Keyword::Static => "static",
            Keyword::Class => "class",
            Keyword::Extends => "extends",
            Keyword::Public => "public",
            Keyword::Private => "private",
            Keyword::Protected => "protected",
            Keyword::Final => "final",
            Keyword::Abstract => "abstract",
            Keyword::Void => "void",
            Keyword::Throws => "throws",
            Keyword::If => "if",
            Keyword::Else => "else",
            Keyword::For => "for",
            Keyword::Try => "try",
            Keyword::Catch => "catch",
            Keyword::Return => "return",
            Keyword::Throw => "throw",
            Keyword::New => "new",
            Keyword::This => "this",
            Keyword::Instanceof => "instanceof",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Punct {
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Dot,
    Ellipsis,
    At,
    Assign,
    EqEq,
    NotEq,
    Lt,
    Gt,
    Le,
    Ge,
    AndAnd,
    OrOr,
    Bang,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Question,
    Colon,
    Amp,
    Pipe,
}

impl Punct {
    pub fn as_str(self) -> &'static str {
        match self {
            Punct::LBrace => "{",
            Punct::RBrace => "}",
            Punct::LParen => "(",
            Punct::RParen => ")",
            Punct::LBracket => "[",
            Punct::RBracket => "]",
            Punct::Semi => ";",
            Punct::Comma => ",",
            Punct::Dot => ".",
            Punct::Ellipsis => "...",
            Punct::At => "@",
            Punct::Assign => "=",
            Punct::EqEq => "==",
            Punct::NotEq => "!=",
            Punct::Lt => "<",
            Punct::Gt => ">",
            Punct::Le => "<=",
            Punct::Ge => ">=",
            Punct::AndAnd => "&&",
            Punct::OrOr => "||",
            Punct::Bang => "!",
            Punct::Plus => "+",
            Punct::Minus => "-",
            Punct::Star => "*",
            Punct::Slash => "/",
            Punct::Percent => "%",
            Punct::Question => "?",
            Punct::Colon => ":",
            Punct::Amp => "&",
            Punct::Pipe => "|",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Keyword(Keyword),
    /// Raw text of a string, char, number, `true`, `false` or `null` literal.
    Literal(String),
    Punct(Punct),
    Eof,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("identifier `{s}`"),
            TokenKind::Keyword(k) => format!("`{}`", k.as_str()),
            TokenKind::Literal(s) => format!("literal `{s}`"),
            TokenKind::Punct(p) => format!("`{}`", p.as_str()),
            TokenKind::Eof => "end of file".to_string(),
        }
    }

    /// Source spelling of the token.
    pub fn text(&self) -> &str {
        match self {
            TokenKind::Ident(s) | TokenKind::Literal(s) => s,
            TokenKind::Keyword(k) => k.as_str(),
            TokenKind::Punct(p) => p.as_str(),
            TokenKind::Eof => "",
        }
    }

    pub fn is_wordlike(&self) -> bool {
        matches!(
            self,
            TokenKind::Ident(_) | TokenKind::Keyword(_) | TokenKind::Literal(_)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub pos: Pos,
    /// Doc comment (`/** ... */`) seen since the previous token, already
    /// reduced to its template text.
    pub doc: Option<String>,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl<'a> Cursor<'a> {
    fn pos(&self) -> Pos {
        Pos::new(self.line, self.column)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

/// Reduces a doc comment body (between `/**` and `*/`) to its template text:
/// leading `*` gutters are stripped per line, then the result is trimmed.
pub fn doc_template_text(body: &str) -> String {
    let lines: Vec<&str> = body
        .split('\n')
        .map(|line| {
            let line = line.trim_start();
            line.strip_prefix('*').unwrap_or(line).trim()
        })
        .collect();
    lines.join("\n").trim().to_string()
}

pub fn tokenize(source: &str, file: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut cur = Cursor {
        chars: source.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();
    let mut pending_doc: Option<String> = None;

    let err =
        |pos: Pos, expected: &str, found: String| SyntaxError::new(file, pos, expected, found);

    loop {
        // whitespace and comments
        while let Some(c) = cur.peek() {
            if c.is_whitespace() {
                cur.bump();
            } else if c == '/' && cur.peek2() == Some('/') {
                while let Some(c) = cur.peek() {
                    if c == '\n' {
                        break;
                    }
                    cur.bump();
                }
            } else if c == '/' && cur.peek2() == Some('*') {
                let start = cur.pos();
                cur.bump();
                cur.bump();
                let mut body = String::new();
                let mut closed = false;
                while let Some(c) = cur.bump() {
                    if c == '*' && cur.peek() == Some('/') {
                        cur.bump();
                        closed = true;
                        break;
                    }
                    body.push(c);
                }
                if !closed {
                    return Err(err(start, "`*/` closing the comment", "end of file".into()));
                }
                // `/**/` is an empty plain comment, not a doc comment.
                if let Some(doc) = body.strip_prefix('*') {
                    pending_doc = Some(doc_template_text(doc));
                }
            } else {
                break;
            }
        }

        let pos = cur.pos();
        let Some(c) = cur.peek() else {
            tokens.push(Token {
                kind: TokenKind::Eof,
                pos,
                doc: pending_doc.take(),
            });
            return Ok(tokens);
        };

        let kind = if is_ident_start(c) {
            let mut word = String::new();
            while let Some(c) = cur.peek().filter(|&c| is_ident_continue(c)) {
                word.push(c);
                cur.bump();
            }
            match word.as_str() {
                "true" | "false" | "null" => TokenKind::Literal(word),
                _ => match Keyword::from_ident(&word) {
                    Some(k) => TokenKind::Keyword(k),
                    None => TokenKind::Ident(word),
                },
            }
        } else if c.is_ascii_digit() {
            let mut raw = String::new();
            while let Some(c) = cur.peek() {
                if c.is_ascii_alphanumeric()
                    || c == '_'
                    || (c == '.' && cur.peek2().is_some_and(|d| d.is_ascii_digit()))
                {
                    raw.push(c);
                    cur.bump();
                } else {
                    break;
                }
            }
            TokenKind::Literal(raw)
        } else if c == '"' || c == '\'' {
            let quote = c;
            let mut raw = String::new();
            raw.push(quote);
            cur.bump();
            loop {
                match cur.bump() {
                    None | Some('\n') => {
                        return Err(err(pos, "closing quote of literal", "end of line".into()))
                    }
                    Some('\\') => {
                        raw.push('\\');
                        match cur.bump() {
                            Some(e) if e != '\n' => raw.push(e),
                            _ => return Err(err(pos, "escape sequence", "end of line".into())),
                        }
                    }
                    Some(ch) => {
                        raw.push(ch);
                        if ch == quote {
                            break;
                        }
                    }
                }
            }
            TokenKind::Literal(raw)
        } else {
            cur.bump();
            let p = match c {
                '{' => Punct::LBrace,
                '}' => Punct::RBrace,
                '(' => Punct::LParen,
                ')' => Punct::RParen,
                '[' => Punct::LBracket,
                ']' => Punct::RBracket,
                ';' => Punct::Semi,
                ',' => Punct::Comma,
                '.' => {
                    if cur.peek() == Some('.') && cur.peek2() == Some('.') {
                        cur.bump();
                        cur.bump();
                        Punct::Ellipsis
                    } else {
                        Punct::Dot
                    }
                }
                '@' => Punct::At,
                '=' => {
                    if cur.eat('=') {
                        Punct::EqEq
                    } else {
                        Punct::Assign
                    }
                }
                '!' => {
                    if cur.eat('=') {
                        Punct::NotEq
                    } else {
                        Punct::Bang
                    }
                }
                '<' => {
                    if cur.eat('=') {
                        Punct::Le
                    } else {
                        Punct::Lt
                    }
                }
                '>' => {
                    if cur.eat('=') {
                        Punct::Ge
                    } else {
                        Punct::Gt
                    }
                }
                '&' => {
                    if cur.eat('&') {
                        Punct::AndAnd
                    } else {
                        Punct::Amp
                    }
                }
                '|' => {
                    if cur.eat('|') {
                        Punct::OrOr
                    } else {
                        Punct::Pipe
                    }
                }
                '+' => Punct::Plus,
                '-' => Punct::Minus,
                '*' => Punct::Star,
                '/' => Punct::Slash,
                '%' => Punct::Percent,
                '?' => Punct::Question,
                ':' => Punct::Colon,
                other => return Err(err(pos, "a MiniJ token", format!("character `{other}`"))),
            };
            TokenKind::Punct(p)
        };
        tokens.push(Token {
            kind,
            pos,
            doc: pending_doc.take(),
        });
    }
}
