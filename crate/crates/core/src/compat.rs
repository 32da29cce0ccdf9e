//! Compatibility and refinement-compatibility of a tree with a partition, and
//! separating-edge sets.

use crate::coloring::{check_leaf_sets, color_edges_with, EdgeColoring, RefusalWitness};
use crate::error::{Error, Result};
use crate::hierarchy::Hierarchy;
use crate::label::same_taxa;
use crate::partition::{BlockId, Partition};
use crate::refine::refine_with;
use crate::tree::{RootedTree, UnrootedTree, VertexId, NONE};
use crate::unionfind::UnionFind;

/// A set of edges of a rooted tree, each named by its child endpoint. Sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SeparatingEdgeSet(Vec<VertexId>);

impl SeparatingEdgeSet {
    pub fn new(mut edges: Vec<VertexId>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        SeparatingEdgeSet(edges)
    }

    pub fn edges(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &SeparatingEdgeSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum CompatVerdict {
    /// `P = F(T, H)` for the canonical separating set `edges`.
    Compatible { edges: SeparatingEdgeSet },
    /// Not compatible, but `refinement` is a compatible refinement of the
    /// tree. `vertex` has child edges colored by each of `blocks`.
    RCompatibleOnly {
        vertex: VertexId,
        blocks: Vec<BlockId>,
        refinement: RootedTree,
    },
    /// No refinement is compatible: `witness` is an edge colored by two blocks.
    Incompatible { witness: RefusalWitness },
}

impl CompatVerdict {
    pub fn is_compatible(&self) -> bool {
        matches!(self, CompatVerdict::Compatible { .. })
    }

    pub fn is_r_compatible(&self) -> bool {
        !matches!(self, CompatVerdict::Incompatible { .. })
    }
}

/// `F(T, H)`: leaf classes of the forest left after deleting `h`.
pub fn forest_partition(t: &RootedTree, h: &[VertexId]) -> Result<Partition> {
    let mut cut = vec![false; t.len()];
    for &v in h {
        if v == t.root() || v as usize >= t.len() {
            return Err(Error::ForeignEdge(format!("v{v}")));
        }
        cut[v as usize] = true;
    }
    // Preorder: a vertex's component is its own if its edge is cut, else its parent's.
    let mut comp = vec![0u32; t.len()];
    for v in t.edges() {
        comp[v as usize] = if cut[v as usize] {
            v
        } else {
            comp[t.parent(v).unwrap() as usize]
        };
    }
    let assignment: Vec<u32> = t.taxa().ids().map(|x| comp[t.leaf(x) as usize]).collect();
    Ok(Partition::from_assignment(t.taxa(), &assignment))
}

/// `F(T̄, H)` for an unrooted tree; edges are unordered vertex pairs.
pub fn forest_partition_unrooted(t: &UnrootedTree, h: &[(VertexId, VertexId)]) -> Result<Partition> {
    let mut cut: Vec<(VertexId, VertexId)> = Vec::with_capacity(h.len());
    for &(u, v) in h {
        let e = (u.min(v), u.max(v));
        if (e.0 as usize) >= t.len() || !t.neighbors(e.0).contains(&e.1) {
            return Err(Error::ForeignEdge(format!("{u}-{v}")));
        }
        cut.push(e);
    }
    cut.sort_unstable();
    let mut uf = UnionFind::new(t.len());
    for e in t.edges() {
        if cut.binary_search(&e).is_err() {
            uf.union(e.0 as usize, e.1 as usize);
        }
    }
    let assignment: Vec<u32> = t
        .taxa()
        .ids()
        .map(|x| uf.find(t.leaf(x) as usize) as u32)
        .collect();
    Ok(Partition::from_assignment(t.taxa(), &assignment))
}

pub fn verify_separating_set(t: &RootedTree, p: &Partition, h: &[VertexId]) -> Result<bool> {
    check_leaf_sets(t, p)?;
    Ok(forest_partition(t, h)? == *p)
}

/// Smallest vertex with two differently colored child edges, with its colors.
/// Such a vertex is the lca of one of the colors, so only block lcas are inspected.
fn conflicting_vertex(t: &RootedTree, p: &Partition, g: &EdgeColoring) -> Option<(VertexId, Vec<BlockId>)> {
    let mut hit: Option<VertexId> = None;
    for a in p.block_ids() {
        let u = g.block_lca(a);
        if hit.is_some_and(|h| h <= u) {
            continue;
        }
        let mut first = NONE;
        for &c in t.children(u) {
            if let Some(b) = g.color(c) {
                if first == NONE {
                    first = b.0;
                } else if first != b.0 {
                    hit = Some(u);
                    break;
                }
            }
        }
    }
    let u = hit?;
    let mut blocks: Vec<BlockId> = t.children(u).iter().filter_map(|&c| g.color(c)).collect();
    blocks.sort_unstable();
    blocks.dedup();
    Some((u, blocks))
}

fn canonical_from(t: &RootedTree, p: &Partition, g: &EdgeColoring) -> SeparatingEdgeSet {
    SeparatingEdgeSet::new(
        p.block_ids()
            .map(|a| g.block_lca(a))
            .filter(|&v| v != t.root())
            .collect(),
    )
}

/// Decides compatibility and r-compatibility in one linear pass.
pub fn classify(t: &RootedTree, p: &Partition) -> Result<CompatVerdict> {
    check_leaf_sets(t, p)?;
    let idx = t.lca_index();
    let g = match color_edges_with(t, &idx, p) {
        Ok(g) => g,
        Err(witness) => return Ok(CompatVerdict::Incompatible { witness }),
    };
    match conflicting_vertex(t, p, &g) {
        None => {
            let edges = canonical_from(t, p, &g);
            Ok(CompatVerdict::Compatible { edges })
        }
        Some((vertex, blocks)) => Ok(CompatVerdict::RCompatibleOnly {
            vertex,
            blocks,
            refinement: refine_with(t, &g),
        }),
    }
}

pub fn is_compatible(t: &RootedTree, p: &Partition) -> Result<bool> {
    check_leaf_sets(t, p)?;
    Ok(match color_edges_with(t, &t.lca_index(), p) {
        Ok(g) => conflicting_vertex(t, p, &g).is_none(),
        Err(_) => false,
    })
}

pub fn is_r_compatible(t: &RootedTree, p: &Partition) -> Result<bool> {
    check_leaf_sets(t, p)?;
    Ok(color_edges_with(t, &t.lca_index(), p).is_ok())
}

fn compatible_coloring(t: &RootedTree, p: &Partition) -> Result<EdgeColoring> {
    check_leaf_sets(t, p)?;
    let g = color_edges_with(t, &t.lca_index(), p).map_err(|_| Error::NotCompatible)?;
    if conflicting_vertex(t, p, &g).is_some() {
        return Err(Error::NotCompatible);
    }
    Ok(g)
}

/// Edges above `lca_T(A)` for every block whose lca is not the root,
/// checked against `F(T, H) = P`.
pub fn canonical_separating_edges(t: &RootedTree, p: &Partition) -> Result<SeparatingEdgeSet> {
    check_leaf_sets(t, p)?;
    let g = color_edges_with(t, &t.lca_index(), p).map_err(|_| Error::NotCompatible)?;
    let h = canonical_from(t, p, &g);
    if forest_partition(t, h.edges())? != *p {
        return Err(Error::NotCompatible);
    }
    Ok(h)
}

/// A separating set of size `|P| - 1`. When the canonical set has `|P|`
/// edges, the edge of the lowest block among those whose lca has no other
/// block lca above it is dropped.
pub fn minimum_separating_edges(t: &RootedTree, p: &Partition) -> Result<SeparatingEdgeSet> {
    let g = compatible_coloring(t, p)?;
    let h = canonical_from(t, p, &g);
    if h.len() < p.len() {
        return Ok(h);
    }
    let mut lcas: Vec<(VertexId, BlockId)> = p.block_ids().map(|a| (g.block_lca(a), a)).collect();
    lcas.sort_unstable();
    let mut drop = None::<BlockId>;
    let mut covered_until = 0;
    for &(v, a) in &lcas {
        if v >= covered_until {
            covered_until = t.subtree_end(v);
            drop = Some(drop.map_or(a, |d| d.min(a)));
        }
    }
    let dropped = g.block_lca(drop.expect("non-empty partition"));
    let h = SeparatingEdgeSet::new(h.edges().iter().copied().filter(|&v| v != dropped).collect());
    debug_assert_eq!(forest_partition(t, h.edges()).as_ref(), Ok(p));
    Ok(h)
}

/// The unique largest separating set: every uncolored edge.
pub fn maximum_separating_edges(t: &RootedTree, p: &Partition) -> Result<SeparatingEdgeSet> {
    let g = compatible_coloring(t, p)?;
    Ok(SeparatingEdgeSet::new(t.edges().filter(|&v| g.color(v).is_none()).collect()))
}

/// Reference check through closures: every `A_H` is a union of blocks and
/// distinct blocks have distinct closures.
pub fn is_compatible_via_closures(h: &Hierarchy, p: &Partition) -> Result<bool> {
    if !same_taxa(h.taxa(), p.taxa()) {
        return Err(Error::LeafSetMismatch);
    }
    let mut closures = Vec::with_capacity(p.len());
    for block in p.blocks() {
        let c = h.closure(block)?;
        let union_of_blocks = c.iter().all(|&x| {
            p.block(p.block_of(x))
                .iter()
                .all(|y| c.binary_search(y).is_ok())
        });
        if !union_of_blocks {
            return Ok(false);
        }
        closures.push(c);
    }
    closures.sort_unstable();
    Ok(closures.windows(2).all(|w| w[0] != w[1]))
}

/// Verdict for an unrooted tree, obtained by rooting at its default inner
/// vertex. Separating edges are returned as unrooted vertex pairs.
/// Separating edges of an unrooted tree as vertex pairs.
pub type UnrootedEdges = Vec<(VertexId, VertexId)>;

pub fn classify_unrooted(t: &UnrootedTree, p: &Partition) -> Result<(CompatVerdict, Option<UnrootedEdges>)> {
    if !same_taxa(t.taxa(), p.taxa()) {
        return Err(Error::LeafSetMismatch);
    }
    let (rooted, map) = t.root_at_mapped(t.default_root())?;
    let verdict = classify(&rooted, p)?;
    let edges = match &verdict {
        CompatVerdict::Compatible { edges } => {
            let mut back = vec![0u32; map.len()];
            for (old, &new) in map.iter().enumerate() {
                back[new as usize] = old as u32;
            }
            let mut out: Vec<(VertexId, VertexId)> = edges
                .edges()
                .iter()
                .map(|&v| {
                    let (a, b) = (back[v as usize], back[rooted.parent(v).unwrap() as usize]);
                    (a.min(b), a.max(b))
                })
                .collect();
            out.sort_unstable();
            Some(out)
        }
        _ => None,
    };
    Ok((verdict, edges))
}

pub fn is_compatible_unrooted(t: &UnrootedTree, p: &Partition) -> Result<bool> {
    Ok(classify_unrooted(t, p)?.0.is_compatible())
}
