//! Matching-theoretic structure of factorizable graphs.
//!
//! This crate computes the canonical decomposition of a graph with a perfect
//! matching (factor-components, their partial order, the generalized
//! Kotzig-Lovász partition and the tagging of upper components), builds
//! towers, M-arcs and tower-sequences on top of it, and uses all of that to
//! construct, for a brick and a non-trivial cut, a perfect matching that
//! crosses the cut at least twice.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command
//! line live in the `tightcut-cli` crate.

#![no_std]

extern crate alloc;

pub mod altpath;
pub mod canon;
pub mod catalog;
pub mod engine;
pub mod error;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod towers;

pub use altpath::{AltPath, Arc, Circuit, Ear, EarShape, PathKind};
pub use canon::{CanonicalDecomposition, ClassRef, ComponentId, FactorComponent, TpathVariant};
pub use engine::{fat_witness, CutWitness};
pub use error::{Error, Result};
pub use graph::{vset, EdgeId, Graph, VertexId, VertexSet};
pub use matching::Matching;
pub use towers::{TowerLink, TowerSequence};
