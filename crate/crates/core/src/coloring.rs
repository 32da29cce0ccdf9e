//! The edge coloring induced by a partition: a block colors every edge that
//! lies on a path between two of its leaves.

use std::fmt;

use crate::error::{Error, Result};
use crate::label::same_taxa;
use crate::partition::{BlockId, Partition};
use crate::tree::{LcaIndex, RootedTree, VertexId, NONE};

/// An edge that lies on paths inside two distinct blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RefusalWitness {
    /// Child endpoint of the edge.
    pub edge: VertexId,
    pub first: BlockId,
    pub second: BlockId,
}

impl fmt::Display for RefusalWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "edge v{} is colored by both {} and {}",
            self.edge, self.first, self.second
        )
    }
}

/// A complete coloring in which every edge has at most one color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    /// Block id per edge, `NONE` when uncolored.
    color: Vec<u32>,
    block_lca: Vec<VertexId>,
    steps: usize,
}

impl EdgeColoring {
    /// Color of the edge above `v`; `None` for the root.
    pub fn color(&self, v: VertexId) -> Option<BlockId> {
        let c = self.color[v as usize];
        (c != NONE).then_some(BlockId(c))
    }

    /// `lca_T(A)`.
    pub fn block_lca(&self, a: BlockId) -> VertexId {
        self.block_lca[a.index()]
    }

    /// Number of edge paintings performed, including an aborting one.
    pub fn paint_steps(&self) -> usize {
        self.steps
    }
}

pub(crate) fn check_leaf_sets(t: &RootedTree, p: &Partition) -> Result<()> {
    if same_taxa(t.taxa(), p.taxa()) {
        Ok(())
    } else {
        Err(Error::LeafSetMismatch)
    }
}

/// Builds the coloring bottom-up in O(|X|) after lca preprocessing, stopping
/// at the first edge that would receive a second color.
pub fn color_edges(t: &RootedTree, p: &Partition) -> Result<Result<EdgeColoring, RefusalWitness>> {
    check_leaf_sets(t, p)?;
    Ok(color_edges_with(t, &t.lca_index(), p))
}

pub fn color_edges_with(
    t: &RootedTree,
    idx: &LcaIndex,
    p: &Partition,
) -> Result<EdgeColoring, RefusalWitness> {
    let mut color: Vec<u32> = vec![NONE; t.len()];
    let mut steps = 0usize;

    // Paints upward from `v` until `stop` or an edge this block already painted.
    let mut paint = |color: &mut Vec<u32>, mut v: VertexId, stop: VertexId, a: BlockId| {
        while v != stop {
            match color[v as usize] {
                NONE => {
                    steps += 1;
                    color[v as usize] = a.0;
                }
                b if b == a.0 => return Ok(()),
                b => {
                    steps += 1;
                    return Err(RefusalWitness {
                        edge: v,
                        first: BlockId(b),
                        second: a,
                    });
                }
            }
            v = t.parent(v).expect("stop is an ancestor");
        }
        Ok(())
    };

    // Leaves in preorder; `cur[A]` is the lca of the A-leaves seen so far.
    let blk: Vec<u32> = (0..t.len() as VertexId)
        .map(|v| t.taxon(v).map_or(NONE, |x| p.block_of(x).0))
        .collect();
    let mut cur = vec![NONE; p.len()];
    for (leaf, &b) in blk.iter().enumerate() {
        if b == NONE {
            continue;
        }
        let (leaf, a) = (leaf as VertexId, BlockId(b));
        let c = cur[a.index()];
        if c == NONE {
            cur[a.index()] = leaf;
            continue;
        }
        let new = idx.lca(c, leaf);
        paint(&mut color, leaf, new, a)?;
        if c != new {
            paint(&mut color, c, new, a)?;
            cur[a.index()] = new;
        }
    }
    let block_lca = cur;
    Ok(EdgeColoring {
        color,
        block_lca,
        steps,
    })
}

/// Every block whose leaves lie on both sides of the edge above `v`.
pub fn color_of_edge_naive(t: &RootedTree, p: &Partition, v: VertexId) -> Vec<BlockId> {
    let mut inside = vec![0usize; p.len()];
    for x in t.cluster(v) {
        inside[p.block_of(x).index()] += 1;
    }
    p.block_ids()
        .filter(|&a| inside[a.index()] > 0 && inside[a.index()] < p.block(a).len())
        .collect()
}

/// Pairs `(u, A)` where `A` colors a child edge of `u` but not the edge above
/// `u`, and another child edge of `u` carries a different color.
pub fn local_unresolved_vertices(t: &RootedTree, gamma: &EdgeColoring) -> Vec<(VertexId, BlockId)> {
    let mut out = Vec::new();
    let mut seen: Vec<BlockId> = Vec::new();
    for u in 0..t.len() as VertexId {
        if t.is_leaf(u) {
            continue;
        }
        seen.clear();
        for &c in t.children(u) {
            if let Some(a) = gamma.color(c) {
                if !seen.contains(&a) {
                    seen.push(a);
                }
            }
        }
        if seen.len() < 2 {
            continue;
        }
        seen.sort_unstable();
        let above = t.parent(u).and_then(|_| gamma.color(u));
        out.extend(seen.iter().filter(|&&a| Some(a) != above).map(|&a| (u, a)));
    }
    out
}
