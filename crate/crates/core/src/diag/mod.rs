//! Exception values with message keys and positional parameters, catalog
//! rendering of cause chains, and a simulator for the wrap-undeclared
//! propagation policy and the null-argument contract.

mod render;
mod trace;

pub use render::{
    placeholder_indices, render_chain, render_message, required_arity, MessageCatalog,
};
pub use trace::{
    check_null_args, check_null_return, is_declared, propagate, CallTrace, Frame, FrameArg,
    TraceError,
};

/// Key of the wrapper created when an undeclared exception leaves a
/// wrap-enabled frame.
pub const OPERATION_FAILURE: &str = "multex.OperationFailure";
pub const ARGUMENT_NULL_FAILURE: &str = "ArgumentNullFailure";
pub const RETURN_NULL_FAILURE: &str = "ReturnNullFailure";
pub const ARGUMENT_NULL_TEMPLATE: &str =
    "Argument \"{0}\" of executable \"{1}\" is null, although not annotated as @Nullable";
pub const RETURN_NULL_TEMPLATE: &str =
    "Result of executable \"{0}\" is null, although not annotated as @Nullable";

/// An exception: a message key, its rendered parameters and an optional
/// cause.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExcValue {
    pub key: String,
    pub params: Vec<String>,
    pub cause: Option<Box<ExcValue>>,
}

impl ExcValue {
    pub fn new(key: impl Into<String>, params: Vec<String>) -> Self {
        Self {
            key: key.into(),
            params,
            cause: None,
        }
    }

    pub fn caused_by(mut self, cause: ExcValue) -> Self {
        self.cause = Some(Box::new(cause));
        self
    }

    /// Outermost first.
    pub fn chain(&self) -> impl Iterator<Item = &ExcValue> {
        std::iter::successors(Some(self), |e| e.cause.as_deref())
    }

    pub fn chain_len(&self) -> usize {
        self.chain().count()
    }

    pub fn innermost(&self) -> &ExcValue {
        self.chain().last().expect("chain is never empty")
    }
}
