//! Partition systems: joint compatibility with a fixed tree, exact search
//! over binary refinements, and symmetrized Fitch maps.

mod fitch;
mod search;

use std::sync::Arc;

pub use fitch::{
    explainable, explainable_rooted, fitch_map_of, monochromatic_partition, symm_fitch_recognition,
    EdgeColoredTree, FitchMap,
};
pub use search::{
    binary_refinement_count, compat_tp, enumerate_binary_refinements, exist_tp, BinaryRefinements,
    SearchOptions, DEFAULT_BUDGET,
};

use crate::compat::{classify, CompatVerdict};
use crate::error::{Error, Result};
use crate::label::{same_taxa, Taxa};
use crate::partition::{meet_all, Partition};
use crate::tree::{RootedTree, VertexId};

/// An ordered family of partitions of one leaf set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSystem {
    taxa: Arc<Taxa>,
    members: Vec<Partition>,
}

impl PartitionSystem {
    pub fn new(taxa: &Arc<Taxa>, members: Vec<Partition>) -> Result<Self> {
        if members.iter().any(|p| !same_taxa(p.taxa(), taxa)) {
            return Err(Error::GroundSetMismatch);
        }
        Ok(PartitionSystem {
            taxa: Arc::clone(taxa),
            members,
        })
    }

    pub fn taxa(&self) -> &Arc<Taxa> {
        &self.taxa
    }

    pub fn members(&self) -> &[Partition] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn check_tree(t: &RootedTree, ps: &PartitionSystem) -> Result<()> {
    if same_taxa(t.taxa(), ps.taxa()) {
        Ok(())
    } else {
        Err(Error::GroundSetMismatch)
    }
}

/// True iff every member is compatible with `t`, with one verdict per member.
pub fn system_compatible_fixed(t: &RootedTree, ps: &PartitionSystem) -> Result<(bool, Vec<CompatVerdict>)> {
    check_tree(t, ps)?;
    let verdicts = ps
        .members
        .iter()
        .map(|p| classify(t, p))
        .collect::<Result<Vec<_>>>()?;
    Ok((verdicts.iter().all(CompatVerdict::is_compatible), verdicts))
}

/// `⋀ 𝔓`.
pub fn meet_system(ps: &PartitionSystem) -> Result<Partition> {
    meet_all(&ps.members)
}

/// How far a tree is from binary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionStats {
    /// `|V| - |X| - 1`.
    pub resolved: usize,
    /// `|X| - 2`.
    pub possible: usize,
    /// `h(T) = 2|X| - |E| - 2`.
    pub h: usize,
    /// `(v, h_v)` with `h_v = |children(v)| - 2 > 0`.
    pub excess: Vec<(VertexId, usize)>,
}

impl ResolutionStats {
    /// `res(T)` in `[0, 1]`.
    pub fn res(&self) -> f64 {
        self.resolved as f64 / self.possible as f64
    }
}

pub fn resolution_stats(t: &RootedTree) -> Result<ResolutionStats> {
    let n = t.taxa().len();
    if n < 3 {
        return Err(Error::TooFewLeaves(n));
    }
    let excess: Vec<(VertexId, usize)> = (0..t.len() as VertexId)
        .filter(|&v| t.children(v).len() > 2)
        .map(|v| (v, t.children(v).len() - 2))
        .collect();
    Ok(ResolutionStats {
        resolved: t.len() - n - 1,
        possible: n - 2,
        h: 2 * n - t.num_edges() - 2,
        excess,
    })
}
