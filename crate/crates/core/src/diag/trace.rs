use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::{ExcValue, ARGUMENT_NULL_FAILURE, OPERATION_FAILURE, RETURN_NULL_FAILURE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("trace has no frames")]
    NoFrames,
    #[error("raise frame {index} is out of range for {len} frames")]
    RaiseFrameOutOfRange { index: usize, len: usize },
    #[error("exception hierarchy has a cycle through `{0}`")]
    CyclicHierarchy(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameArg {
    pub name: String,
    pub type_text: String,
    /// `None` is a null value.
    pub value: Option<String>,
    pub nullable: bool,
}

impl FrameArg {
    pub fn rendered_value(&self) -> &str {
        self.value.as_deref().unwrap_or("null")
    }
}

/// One simulated method execution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub method_qname: String,
    /// `Type.method(ParamType, ...)`.
    pub simple_sig: String,
    pub args: Vec<FrameArg>,
    /// Whether the method may return null.
    pub method_nullable: bool,
    pub declared_throws: Vec<String>,
    pub wrap_enabled: bool,
}

/// A call stack (index 0 outermost) with an exception raised in one frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CallTrace {
    frames: Vec<Frame>,
    raise_frame_index: usize,
    raised: ExcValue,
    hierarchy: BTreeMap<String, String>,
}

impl CallTrace {
    pub fn new(
        frames: Vec<Frame>,
        raise_frame_index: usize,
        raised: ExcValue,
        hierarchy: BTreeMap<String, String>,
    ) -> Result<Self, TraceError> {
        if frames.is_empty() {
            return Err(TraceError::NoFrames);
        }
        if raise_frame_index >= frames.len() {
            return Err(TraceError::RaiseFrameOutOfRange {
                index: raise_frame_index,
                len: frames.len(),
            });
        }
        for start in hierarchy.keys() {
            let mut seen = BTreeSet::new();
            let mut at = start;
            while let Some(parent) = hierarchy.get(at) {
                if !seen.insert(at) {
                    return Err(TraceError::CyclicHierarchy(at.clone()));
                }
                at = parent;
            }
        }
        Ok(Self {
            frames,
            raise_frame_index,
            raised,
            hierarchy,
        })
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn raise_frame_index(&self) -> usize {
        self.raise_frame_index
    }

    pub fn raised(&self) -> &ExcValue {
        &self.raised
    }

    pub fn hierarchy(&self) -> &BTreeMap<String, String> {
        &self.hierarchy
    }
}

/// True iff `key` is one of `declared` or a descendant of one under
/// `hierarchy` (child to parent).
pub fn is_declared(key: &str, declared: &[String], hierarchy: &BTreeMap<String, String>) -> bool {
    let mut at = key;
    // A cyclic map cannot loop forever: at most one step per entry.
    for _ in 0..=hierarchy.len() {
        if declared.iter().any(|d| d == at) {
            return true;
        }
        match hierarchy.get(at) {
            Some(parent) => at = parent,
            None => return false,
        }
    }
    false
}

/// Unwinds from the raise frame to the outermost frame. Each wrap-enabled
/// frame that does not declare the current exception wraps it in an
/// OperationFailure carrying its signature and argument values.
pub fn propagate(trace: &CallTrace) -> ExcValue {
    let mut current = trace.raised.clone();
    for frame in trace.frames[..=trace.raise_frame_index].iter().rev() {
        if frame.wrap_enabled
            && !is_declared(&current.key, &frame.declared_throws, &trace.hierarchy)
        {
            let mut params = Vec::with_capacity(frame.args.len() + 1);
            params.push(frame.simple_sig.clone());
            params.extend(frame.args.iter().map(|a| a.rendered_value().to_string()));
            current = ExcValue::new(OPERATION_FAILURE, params).caused_by(current);
        }
    }
    current
}

/// One ArgumentNullFailure per null argument not marked nullable.
pub fn check_null_args(frame: &Frame) -> Vec<ExcValue> {
    frame
        .args
        .iter()
        .filter(|a| a.value.is_none() && !a.nullable)
        .map(|a| {
            ExcValue::new(
                ARGUMENT_NULL_FAILURE,
                vec![a.name.clone(), frame.simple_sig.clone()],
            )
        })
        .collect()
}

pub fn check_null_return(frame: &Frame, returned_is_null: bool) -> Option<ExcValue> {
    (returned_is_null && !frame.method_nullable)
        .then(|| ExcValue::new(RETURN_NULL_FAILURE, vec![frame.simple_sig.clone()]))
}
