//! Compatible refinements: for each unresolved vertex `u` and block `A`, the
//! children of `u` whose edges carry `A` are grouped under a new vertex.

use crate::coloring::{check_leaf_sets, color_edges_with, local_unresolved_vertices, EdgeColoring};
use crate::error::{Error, Result};
use crate::hierarchy::Hierarchy;
use crate::label::same_taxa;
use crate::partition::{BlockId, Partition};
use crate::tree::{RootedTree, VertexId, NONE};

fn coloring(t: &RootedTree, p: &Partition) -> Result<EdgeColoring> {
    check_leaf_sets(t, p)?;
    color_edges_with(t, &t.lca_index(), p).map_err(Error::NotRCompatible)
}

/// Pairs `(u, A)` with `L(T(u)) = A_H` for every unresolved block `A`; empty
/// iff the tree is compatible with `p`.
pub fn unresolved_blocks(t: &RootedTree, p: &Partition) -> Result<Vec<(VertexId, BlockId)>> {
    Ok(local_unresolved_vertices(t, &coloring(t, p)?))
}

/// A refinement of `t` compatible with `p`; `t` itself when already compatible.
pub fn build_refinement(t: &RootedTree, p: &Partition) -> Result<RootedTree> {
    Ok(refine_with(t, &coloring(t, p)?))
}

pub(crate) fn refine_with(t: &RootedTree, g: &EdgeColoring) -> RootedTree {
    let pairs = local_unresolved_vertices(t, g);
    if pairs.is_empty() {
        return t.clone();
    }
    let mut parent = t.parent_array().to_vec();
    let mut taxon = t.taxon_array().to_vec();
    let mut names = t.names().to_vec();
    for (u, a) in pairs {
        let w = parent.len() as u32;
        parent.push(u);
        taxon.push(NONE);
        if !names.is_empty() {
            names.push(None);
        }
        for &c in t.children(u) {
            if g.color(c) == Some(a) {
                parent[c as usize] = w;
            }
        }
    }
    RootedTree::build(t.taxa(), &parent, &taxon, names)
        .expect("grouping two or more children keeps the tree phylogenetic")
        .0
}

/// `H*_P` for a hierarchy in which no cluster overlaps two distinct blocks.
pub fn refine_hierarchy(h: &Hierarchy, p: &Partition) -> Result<Hierarchy> {
    if !same_taxa(h.taxa(), p.taxa()) {
        return Err(Error::LeafSetMismatch);
    }
    let t = RootedTree::from_hierarchy(h);
    match color_edges_with(&t, &t.lca_index(), p) {
        Ok(g) => Ok(refine_with(&t, &g).hierarchy()),
        Err(w) => Err(Error::OverlapViolation {
            cluster: t.taxa().format_set(&t.cluster(w.edge)),
            first: p.format_block(w.first),
            second: p.format_block(w.second),
        }),
    }
}
