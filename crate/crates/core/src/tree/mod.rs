//! Rooted and unrooted phylogenetic trees.

mod lca;
mod rooted;
mod unrooted;

pub use lca::LcaIndex;
pub use rooted::RootedTree;
pub use unrooted::UnrootedTree;

/// Vertex index. In a [`RootedTree`] a vertex also names the edge to its parent.
pub type VertexId = u32;

/// Marks a missing parent or a missing taxon in raw vertex arrays.
pub const NONE: u32 = u32::MAX;
