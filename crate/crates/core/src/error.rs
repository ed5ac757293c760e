use alloc::string::String;
use core::fmt;

use crate::graph::{EdgeId, VertexId};

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    UnknownVertex(VertexId),
    UnknownEdge(EdgeId),
    DuplicateVertex(VertexId),
    DuplicateEdge(EdgeId),
    SelfLoop(VertexId),
    EmptyContraction,
    NotFactorizable,
    /// Two edges of the set share an endpoint.
    NotAMatching(VertexId),
    /// The matching leaves this vertex uncovered.
    ImperfectMatching(VertexId),
    /// A vertex/edge sequence is not a path or circuit of the host graph.
    NotAPath(String),
    NotAlternating(String),
    /// The matching restricted to a confinement set is not perfect
    /// (up to the designated uncovered end).
    Confinement(String),
    InvalidComponent(usize),
    InvalidClass { component: usize, class: usize },
    NotABrick { pair: Option<(VertexId, VertexId)> },
    ShoreSize { size: usize, order: usize },
    SizeBound { order: usize, bound: usize },
    OddOrder(usize),
    Precondition(String),
    /// A claim that the underlying theory guarantees did not hold.
    /// This always indicates a bug.
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

/// Re-labels a failure of a step that the theory guarantees as internal.
pub(crate) fn certify<T>(r: Result<T>, what: &str) -> Result<T> {
    r.map_err(|e| match e {
        Error::Internal(_) => e,
        other => Error::Internal(alloc::format!("{what}: {other}")),
    })
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            Error::UnknownEdge(e) => write!(f, "unknown edge {e}"),
            Error::DuplicateVertex(v) => write!(f, "duplicate vertex {v}"),
            Error::DuplicateEdge(e) => write!(f, "duplicate edge id {e}"),
            Error::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            Error::EmptyContraction => f.write_str("cannot contract an empty vertex set"),
            Error::NotFactorizable => f.write_str("not factorizable"),
            Error::NotAMatching(v) => write!(f, "edges share endpoint {v}; not a matching"),
            Error::ImperfectMatching(v) => {
                write!(f, "matching is not perfect: vertex {v} is uncovered")
            }
            Error::NotAPath(msg) => write!(f, "not a path or circuit: {msg}"),
            Error::NotAlternating(msg) => write!(f, "not alternating: {msg}"),
            Error::Confinement(msg) => write!(f, "invalid confinement: {msg}"),
            Error::InvalidComponent(c) => write!(f, "invalid factor-component id {c}"),
            Error::InvalidClass { component, class } => {
                write!(f, "class {class} does not belong to component {component}")
            }
            Error::NotABrick { pair: Some((a, b)) } => {
                write!(f, "not a brick: removing {a} and {b} leaves a disconnected or unfactorizable graph")
            }
            Error::NotABrick { pair: None } => f.write_str("not a brick"),
            Error::ShoreSize { size, order } => write!(
                f,
                "shore size {size} out of range: need 1 < |shore| < {}",
                order.saturating_sub(1)
            ),
            Error::SizeBound { order, bound } => {
                write!(f, "graph has {order} vertices, enumeration bound is {bound}")
            }
            Error::OddOrder(n) => write!(f, "vertex count {n} is odd"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Internal(msg) => write!(f, "internal claim violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
