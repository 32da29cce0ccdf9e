//! Compatibility of partitions and partition systems with phylogenetic trees.

pub mod coloring;
pub mod compat;
pub mod error;
pub mod hierarchy;
pub mod io;
pub mod label;
pub mod oracle;
pub mod par;
pub mod partition;
pub mod refine;
pub mod splits;
pub mod systems;
pub mod tree;
mod unionfind;

pub use error::{Error, Result};
pub use hierarchy::{Completion, Hierarchy};
pub use label::{Label, Taxa, TaxonId};
pub use partition::{BlockId, Partition};
pub use tree::{LcaIndex, RootedTree, UnrootedTree, VertexId};
