//! MiniJ frontend: lexing, parsing and fact extraction for the Java-like
//! input subset the rules run on.

pub mod ast;
pub mod facts;
mod lexer;
mod parser;
pub mod print;

pub use ast::{CompilationUnit, Pos, SourceLocation};
pub use facts::{
    extract_facts, extract_facts_with, AssignFact, CallFact, FactOptions, Facts, IndexedType,
    MethodContext, ReceiverKind, TargetKind, ThrowFact, ThrowForm, TypeIndex,
};
pub use lexer::doc_template_text;
pub use parser::parse_unit;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{location}: expected {expected}, found {found}")]
pub struct SyntaxError {
    pub location: SourceLocation,
    pub expected: String,
    pub found: String,
}

impl SyntaxError {
    pub fn new(
        file: &str,
        pos: Pos,
        expected: impl Into<String>,
        found: impl Into<String>,
    ) -> Self {
        Self {
            location: SourceLocation::new(file, pos),
            expected: expected.into(),
            found: found.into(),
        }
    }
}
