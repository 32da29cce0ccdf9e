//! Symmetrized Fitch maps: `m ∈ ε(x, y)` iff the tree path between `x` and
//! `y` contains an edge carrying color `m`. Colors are `1..=k` with `k ≤ 64`,
//! stored as bit `m - 1`.

use std::sync::Arc;

use super::search::{exist_tp, SearchOptions};
use super::PartitionSystem;
use crate::compat::canonical_separating_edges;
use crate::error::{Error, Result};
use crate::label::{Taxa, TaxonId};
use crate::partition::Partition;
use crate::tree::{RootedTree, UnrootedTree, VertexId};
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FitchMap {
    taxa: Arc<Taxa>,
    colors: u32,
    /// Row-major upper triangle without the diagonal.
    bits: Vec<u64>,
}

impl FitchMap {
    /// The empty map over colors `1..=colors`.
    pub fn new(taxa: &Arc<Taxa>, colors: u32) -> Result<Self> {
        if colors > 64 {
            return Err(Error::TooLarge(format!("{colors} colors (limit 64)")));
        }
        let n = taxa.len();
        Ok(FitchMap {
            taxa: Arc::clone(taxa),
            colors,
            bits: vec![0; n * (n - 1) / 2],
        })
    }

    pub fn taxa(&self) -> &Arc<Taxa> {
        &self.taxa
    }

    pub fn colors(&self) -> u32 {
        self.colors
    }

    fn slot(&self, x: TaxonId, y: TaxonId) -> usize {
        assert_ne!(x, y, "a Fitch map is irreflexive");
        let (i, j) = if x < y { (x as usize, y as usize) } else { (y as usize, x as usize) };
        let n = self.taxa.len();
        i * (2 * n - i - 1) / 2 + (j - i - 1)
    }

    /// Color bitset of `ε(x, y)`; symmetric.
    pub fn get(&self, x: TaxonId, y: TaxonId) -> u64 {
        self.bits[self.slot(x, y)]
    }

    pub fn set(&mut self, x: TaxonId, y: TaxonId, mask: u64) -> Result<()> {
        if self.colors < 64 && mask >> self.colors != 0 {
            let bad = 64 - mask.leading_zeros();
            return Err(Error::UnknownColor(bad.to_string()));
        }
        let s = self.slot(x, y);
        self.bits[s] = mask;
        Ok(())
    }

    pub fn has_color(&self, x: TaxonId, y: TaxonId, m: u32) -> bool {
        self.get(x, y) >> (m - 1) & 1 == 1
    }
}

/// A rooted tree with a color set on every edge (indexed by child vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoredTree {
    pub tree: RootedTree,
    pub colors: u32,
    pub lambda: Vec<u64>,
}

impl EdgeColoredTree {
    pub fn uncolored(tree: RootedTree, colors: u32) -> Self {
        let lambda = vec![0; tree.len()];
        EdgeColoredTree { tree, colors, lambda }
    }
}

/// The map explained by `(T, λ)`.
pub fn fitch_map_of(tc: &EdgeColoredTree) -> FitchMap {
    let t = &tc.tree;
    let mut eps = FitchMap::new(t.taxa(), tc.colors).expect("at most 64 colors");
    // From each leaf, walk the tree carrying the union of colors seen.
    let mut stack: Vec<(VertexId, VertexId, u64)> = Vec::new();
    for x in t.taxa().ids() {
        let start = t.leaf(x);
        stack.push((start, start, 0));
        while let Some((v, from, mask)) = stack.pop() {
            if let Some(y) = t.taxon(v) {
                if y > x {
                    let s = eps.slot(x, y);
                    eps.bits[s] = mask;
                }
            }
            if let Some(p) = t.parent(v) {
                if p != from {
                    stack.push((p, v, mask | tc.lambda[v as usize]));
                }
            }
            for &c in t.children(v) {
                if c != from {
                    stack.push((c, v, mask | tc.lambda[c as usize]));
                }
            }
        }
    }
    eps
}

/// `P_m^ε` when the graph of color-`m` pairs is complete multipartite.
pub fn monochromatic_partition(eps: &FitchMap, m: u32) -> Option<Partition> {
    let n = eps.taxa.len() as TaxonId;
    let mut uf = UnionFind::new(n as usize);
    for x in 0..n {
        for y in x + 1..n {
            if !eps.has_color(x, y, m) {
                uf.union(x as usize, y as usize);
            }
        }
    }
    let class: Vec<u32> = (0..n).map(|x| uf.find(x as usize) as u32).collect();
    for x in 0..n {
        for y in x + 1..n {
            let same = class[x as usize] == class[y as usize];
            if same == eps.has_color(x, y, m) {
                return None;
            }
        }
    }
    Some(Partition::from_assignment(&eps.taxa, &class))
}

fn monochromatic_system(eps: &FitchMap) -> Result<PartitionSystem> {
    let members = (1..=eps.colors)
        .map(|m| monochromatic_partition(eps, m).ok_or(Error::NotMonochromaticFitch(m)))
        .collect::<Result<Vec<_>>>()?;
    PartitionSystem::new(&eps.taxa, members)
}

/// A coloring of `t` explaining `eps`, built from the canonical separating
/// edges of every `P_m`; `None` if some `P_m` is not compatible with `t`.
pub fn explainable_rooted(eps: &FitchMap, t: &RootedTree) -> Result<Option<EdgeColoredTree>> {
    let ps = monochromatic_system(eps)?;
    if !crate::label::same_taxa(t.taxa(), &eps.taxa) {
        return Err(Error::LeafSetMismatch);
    }
    let mut tc = EdgeColoredTree::uncolored(t.clone(), eps.colors);
    for (i, p) in ps.members().iter().enumerate() {
        match canonical_separating_edges(t, p) {
            Ok(h) => {
                for &v in h.edges() {
                    tc.lambda[v as usize] |= 1 << i;
                }
            }
            Err(Error::NotCompatible) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    debug_assert_eq!(fitch_map_of(&tc), *eps);
    Ok(Some(tc))
}

/// [`explainable_rooted`] after rooting at the default inner vertex.
pub fn explainable(eps: &FitchMap, t: &UnrootedTree) -> Result<Option<EdgeColoredTree>> {
    explainable_rooted(eps, &t.root_at(t.default_root())?)
}

/// Some edge-colored tree explaining `eps`, or `None`.
pub fn symm_fitch_recognition(eps: &FitchMap, opts: &SearchOptions) -> Result<Option<EdgeColoredTree>> {
    let ps = monochromatic_system(eps)?;
    match exist_tp(&ps, opts)? {
        Some(t) => explainable_rooted(eps, &t),
        None => Ok(None),
    }
}
