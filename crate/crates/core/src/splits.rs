//! Splits of X, split systems, and split-based compatibility checks.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hierarchy::{Completion, Hierarchy};
use crate::label::{same_taxa, Taxa, TaxonId};
use crate::partition::{meet_all, Partition};
use crate::tree::{RootedTree, UnrootedTree, VertexId};

/// A bipartition `A | X∖A`, stored as the side that contains taxon 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Split {
    side: Vec<TaxonId>,
}

impl Split {
    /// Either side may be given. Both sides must be non-empty.
    pub fn new(taxa: &Taxa, side: &[TaxonId]) -> Result<Self> {
        let mut side = side.to_vec();
        side.sort_unstable();
        side.dedup();
        if side.is_empty() || side.len() >= taxa.len() {
            return Err(Error::EmptySubset);
        }
        if side[0] != 0 {
            side = complement(taxa.len(), &side);
        }
        Ok(Split { side })
    }

    /// The side containing the smallest label.
    pub fn side(&self) -> &[TaxonId] {
        &self.side
    }

    pub fn other_side(&self, n: usize) -> Vec<TaxonId> {
        complement(n, &self.side)
    }

    pub fn is_trivial(&self, n: usize) -> bool {
        self.side.len() == 1 || self.side.len() == n - 1
    }

    /// `{A, X∖A}` as a two-block partition.
    pub fn partition(&self, taxa: &Arc<Taxa>) -> Partition {
        Partition::from_blocks(taxa, vec![self.side.clone(), self.other_side(taxa.len())])
            .expect("a split has two non-empty sides")
    }

    /// Buneman: one of the four side intersections is empty.
    pub fn compatible_with(&self, other: &Split, n: usize) -> bool {
        // Both stored sides contain taxon 0, so they always meet.
        let common = self.side.iter().filter(|x| other.side.binary_search(x).is_ok()).count();
        common == self.side.len()
            || common == other.side.len()
            || self.side.len() + other.side.len() - common == n
    }

    /// Does the split separate two elements of `block`?
    pub fn cuts(&self, block: &[TaxonId]) -> bool {
        let inside = block.iter().filter(|x| self.side.binary_search(x).is_ok()).count();
        inside > 0 && inside < block.len()
    }
}

fn complement(n: usize, sorted: &[TaxonId]) -> Vec<TaxonId> {
    let mut out = Vec::with_capacity(n - sorted.len());
    let mut j = 0;
    for x in 0..n as TaxonId {
        if j < sorted.len() && sorted[j] == x {
            j += 1;
        } else {
            out.push(x);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplitSystem {
    taxa: Arc<Taxa>,
    splits: Vec<Split>,
}

impl SplitSystem {
    pub fn new(taxa: &Arc<Taxa>, mut splits: Vec<Split>) -> Self {
        splits.sort();
        splits.dedup();
        SplitSystem {
            taxa: Arc::clone(taxa),
            splits,
        }
    }

    pub fn taxa(&self) -> &Arc<Taxa> {
        &self.taxa
    }

    pub fn splits(&self) -> &[Split] {
        &self.splits
    }

    pub fn len(&self) -> usize {
        self.splits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.splits.is_empty()
    }

    pub fn contains(&self, s: &Split) -> bool {
        self.splits.binary_search(s).is_ok()
    }

    pub fn format_split(&self, s: &Split) -> String {
        format!(
            "{}|{}",
            self.taxa.format_set(s.side()),
            self.taxa.format_set(&s.other_side(self.taxa.len()))
        )
    }

    fn missing_singleton(&self) -> Option<TaxonId> {
        let n = self.taxa.len();
        let mut have = vec![false; n];
        for s in &self.splits {
            if s.side.len() == 1 {
                have[s.side[0] as usize] = true;
            } else if s.side.len() == n - 1 {
                have[complement(n, &s.side)[0] as usize] = true;
            }
        }
        have.iter().position(|h| !h).map(|x| x as TaxonId)
    }
}

impl fmt::Display for SplitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.splits {
            writeln!(f, "{}", self.format_split(s))?;
        }
        Ok(())
    }
}

/// `𝔖(T̄)`: one split per edge.
pub fn splits_of(t: &UnrootedTree) -> SplitSystem {
    let rooted = t.root_at(t.default_root()).expect("default root is inner");
    splits_of_rooted(&rooted)
}

/// Splits of the edges of a rooted tree, i.e. of its unrooted version.
pub fn splits_of_rooted(t: &RootedTree) -> SplitSystem {
    let splits = t
        .edges()
        .filter_map(|v| Split::new(t.taxa(), &t.cluster(v)).ok())
        .collect();
    SplitSystem::new(t.taxa(), splits)
}

/// Split of the unrooted edge `{u, v}`.
pub fn split_of_edge(t: &UnrootedTree, u: VertexId, v: VertexId) -> Split {
    let mut side = Vec::new();
    let mut stack = vec![(v, u)];
    while let Some((a, from)) = stack.pop() {
        if let Some(x) = t.taxon(a) {
            side.push(x);
        }
        stack.extend(t.neighbors(a).iter().filter(|&&b| b != from).map(|&b| (b, a)));
    }
    Split::new(t.taxa(), &side).expect("both sides of an edge carry leaves")
}

pub fn pairwise_compatible(s: &SplitSystem) -> bool {
    let n = s.taxa.len();
    s.splits
        .iter()
        .enumerate()
        .all(|(i, a)| s.splits[i + 1..].iter().all(|b| a.compatible_with(b, n)))
}

/// The unique unrooted tree with split system `s`.
pub fn tree_of_splits(s: &SplitSystem) -> Result<UnrootedTree> {
    if let Some(x) = s.missing_singleton() {
        return Err(Error::MissingSingletonSplits(s.taxa.label(x).to_string()));
    }
    if !pairwise_compatible(s) {
        return Err(Error::NotTreeLike);
    }
    if s.taxa.len() < 3 {
        return Err(Error::TooFewLeaves(s.taxa.len()));
    }
    // Rooted at taxon 0, the clusters are the sides without it.
    let n = s.taxa.len();
    let clusters = s.splits.iter().map(|sp| sp.other_side(n)).collect();
    let h = Hierarchy::from_clusters(&s.taxa, clusters, Completion::Autocomplete)?;
    RootedTree::from_hierarchy(&h).unroot()
}

/// `𝔖*_P`: the splits `A | X∖A` for blocks `A ≠ X`, plus all singleton splits.
pub fn split_system_of_partition(p: &Partition) -> SplitSystem {
    let taxa = p.taxa();
    let splits = p
        .blocks()
        .iter()
        .filter_map(|b| Split::new(taxa, b).ok())
        .chain(taxa.ids().map(|x| Split::new(taxa, &[x]).unwrap()))
        .collect();
    SplitSystem::new(taxa, splits)
}

/// Some `𝔥 ⊆ s` whose common refinement is `p`, or `None`. The returned `𝔥`
/// is the largest one: every split of `s` that cuts no block.
pub fn is_compatible_splits(s: &SplitSystem, p: &Partition) -> Result<Option<SplitSystem>> {
    if !same_taxa(&s.taxa, p.taxa()) {
        return Err(Error::LeafSetMismatch);
    }
    if !pairwise_compatible(s) {
        return Err(Error::NotTreeLike);
    }
    let chosen: Vec<Split> = s
        .splits
        .iter()
        .filter(|sp| p.blocks().iter().all(|b| !sp.cuts(b)))
        .cloned()
        .collect();
    let meet = if chosen.is_empty() {
        Partition::whole(&s.taxa)
    } else {
        let parts: Vec<Partition> = chosen.iter().map(|sp| sp.partition(&s.taxa)).collect();
        meet_all(&parts)?
    };
    Ok((meet == *p).then(|| SplitSystem::new(&s.taxa, chosen)))
}

/// Edges of `t` whose splits lie in `h`; `F(T̄, H)` then equals `⋀𝔥`.
pub fn edges_of_splits(t: &UnrootedTree, h: &SplitSystem) -> Vec<(VertexId, VertexId)> {
    t.edges()
        .into_iter()
        .filter(|&(u, v)| h.contains(&split_of_edge(t, u, v)))
        .collect()
}

/// `T̄_{|Y}`: the tree displaying the splits of `t` restricted to `y`.
pub fn restrict(t: &UnrootedTree, y: &[TaxonId]) -> Result<UnrootedTree> {
    if y.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut y = y.to_vec();
    y.sort_unstable();
    y.dedup();
    if y.len() < 3 {
        return Err(Error::TooFewLeaves(y.len()));
    }
    let sub = Taxa::new(y.iter().map(|&x| t.taxa().label(x).as_str().to_string()))?;
    // Labels keep their order, so position in `y` is the new id.
    let renumber = |side: &[TaxonId]| -> Vec<TaxonId> {
        side.iter()
            .filter_map(|x| y.binary_search(x).ok().map(|i| i as TaxonId))
            .collect()
    };
    let splits = splits_of(t)
        .splits
        .iter()
        .filter_map(|s| Split::new(&sub, &renumber(s.side())).ok())
        .chain(sub.ids().map(|x| Split::new(&sub, &[x]).unwrap()))
        .collect();
    tree_of_splits(&SplitSystem::new(&sub, splits))
}

/// Splits and blocks as bitmasks over at most 128 taxa.
struct Masks {
    splits: Vec<u128>,
    blocks: Vec<u128>,
}

fn masks(t: &UnrootedTree, p: &Partition) -> Result<Masks> {
    if !same_taxa(t.taxa(), p.taxa()) {
        return Err(Error::LeafSetMismatch);
    }
    if t.taxa().len() > 128 || p.len() > 64 {
        return Err(Error::TooLarge(format!(
            "{} taxa and {} blocks (limits 128 and 64)",
            t.taxa().len(),
            p.len()
        )));
    }
    let bits = |set: &[TaxonId]| set.iter().fold(0u128, |m, &x| m | 1u128 << x);
    Ok(Masks {
        splits: splits_of(t).splits.iter().map(|s| bits(s.side())).collect(),
        blocks: p.blocks().iter().map(|b| bits(b)).collect(),
    })
}

fn peel(
    m: &Masks,
    remaining: u64,
    memo: &mut HashMap<u64, bool>,
    usable: &dyn Fn(u128, u128, &[u128]) -> bool,
) -> bool {
    if remaining.count_ones() <= 1 {
        return true;
    }
    if let Some(&r) = memo.get(&remaining) {
        return r;
    }
    let y: u128 = (0..m.blocks.len())
        .filter(|i| remaining >> i & 1 == 1)
        .fold(0, |acc, i| acc | m.blocks[i]);
    // Splits of T̄_{|Y}: restrictions with two non-empty sides.
    let restricted: Vec<u128> = m
        .splits
        .iter()
        .map(|&s| s & y)
        .filter(|&s| s != 0 && s != y)
        .collect();
    let result = (0..m.blocks.len()).filter(|i| remaining >> i & 1 == 1).any(|i| {
        usable(m.blocks[i], y, &restricted) && peel(m, remaining & !(1u64 << i), memo, usable)
    });
    memo.insert(remaining, result);
    result
}

fn all_blocks(m: &Masks) -> u64 {
    if m.blocks.len() == 64 {
        u64::MAX
    } else {
        (1u64 << m.blocks.len()) - 1
    }
}

/// Reference check that peels off one block whose split is displayed by the
/// current restriction, then recurses on the rest.
pub fn is_compatible_recursive(t: &UnrootedTree, p: &Partition) -> Result<bool> {
    let m = masks(t, p)?;
    let displayed = |a: u128, y: u128, restricted: &[u128]| {
        restricted.iter().any(|&s| s == a || s == y & !a)
    };
    Ok(peel(&m, all_blocks(&m), &mut HashMap::new(), &displayed))
}

/// Reference check for a compatible refinement: the peeled block must be
/// nested with a side of every split of the current restriction.
pub fn is_r_compatible_recursive(t: &UnrootedTree, p: &Partition) -> Result<bool> {
    let m = masks(t, p)?;
    let nested = |a: u128, y: u128, restricted: &[u128]| {
        restricted.iter().all(|&b1| {
            let b2 = y & !b1;
            a & !b1 == 0 || a & !b2 == 0 || b1 & !a == 0 || b2 & !a == 0
        })
    };
    Ok(peel(&m, all_blocks(&m), &mut HashMap::new(), &nested))
}

/// `s ∪ h` is tree-like.
pub fn extends_tree_like(s: &SplitSystem, h: &SplitSystem) -> bool {
    let mut all = s.splits.clone();
    all.extend(h.splits.iter().cloned());
    pairwise_compatible(&SplitSystem::new(&s.taxa, all))
}
