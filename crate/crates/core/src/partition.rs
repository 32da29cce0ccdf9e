//! Partitions of a leaf set and the partition lattice.
//!
//! A [`Partition`] is always canonical: every block is sorted and the blocks
//! are ordered by their smallest label. Two partitions over the same leaf set
//! are therefore equal iff their block lists are equal.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::label::{same_taxa, Taxa, TaxonId};
use crate::unionfind::UnionFind;

/// Position of a block within its canonical [`Partition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockId(pub u32);

impl BlockId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    taxa: Arc<Taxa>,
    blocks: Vec<Vec<TaxonId>>,
    block_of: Vec<u32>,
}

impl Partition {
    /// Validates a family of label sets as a partition of `taxa`.
    pub fn new<S: AsRef<str>>(taxa: &Arc<Taxa>, blocks: &[Vec<S>]) -> Result<Self> {
        let mut ids = Vec::with_capacity(blocks.len());
        for block in blocks {
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            let mut set = Vec::with_capacity(block.len());
            for label in block {
                set.push(taxa.require(label.as_ref())?);
            }
            ids.push(set);
        }
        Self::from_blocks(taxa, ids)
    }

    /// Validates blocks given as taxon ids. Duplicates inside a block are
    /// tolerated; an id shared by two blocks is not.
    pub fn from_blocks(taxa: &Arc<Taxa>, blocks: Vec<Vec<TaxonId>>) -> Result<Self> {
        const UNSET: u32 = u32::MAX;
        let mut block_of = vec![UNSET; taxa.len()];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            for &x in block {
                let slot = block_of
                    .get_mut(x as usize)
                    .ok_or_else(|| Error::UnknownLabel(format!("#{x}")))?;
                if *slot != UNSET && *slot != i as u32 {
                    return Err(Error::BlockOverlap(taxa.label(x).to_string()));
                }
                *slot = i as u32;
            }
        }
        if let Some(x) = block_of.iter().position(|&b| b == UNSET) {
            return Err(Error::CoverageGap(taxa.label(x as TaxonId).to_string()));
        }
        Ok(Self::from_assignment(taxa, &block_of))
    }

    /// Builds the partition whose blocks are the classes of `assignment`
    /// (taxon id -> arbitrary class key).
    pub fn from_assignment(taxa: &Arc<Taxa>, assignment: &[u32]) -> Self {
        assert_eq!(assignment.len(), taxa.len());
        const UNSET: u32 = u32::MAX;
        let n = assignment.len();
        let dense = assignment.iter().all(|&k| (k as usize) < 4 * n + 64);
        let mut table = if dense { vec![UNSET; 4 * n + 64] } else { Vec::new() };
        let mut map: HashMap<u32, u32> = HashMap::new();
        let mut sizes: Vec<u32> = Vec::new();
        let mut block_of = Vec::with_capacity(n);
        // Walking taxa in increasing order numbers the blocks by smallest member.
        for &key in assignment {
            let next = sizes.len() as u32;
            let b = if dense {
                let slot = &mut table[key as usize];
                if *slot == UNSET {
                    *slot = next;
                }
                *slot
            } else {
                *map.entry(key).or_insert(next)
            };
            if b == next {
                sizes.push(0);
            }
            sizes[b as usize] += 1;
            block_of.push(b);
        }
        let mut blocks: Vec<Vec<TaxonId>> = sizes.iter().map(|&s| Vec::with_capacity(s as usize)).collect();
        for (x, &b) in block_of.iter().enumerate() {
            blocks[b as usize].push(x as TaxonId);
        }
        Partition {
            taxa: Arc::clone(taxa),
            blocks,
            block_of,
        }
    }

    /// The one-block partition `{X}`.
    pub fn whole(taxa: &Arc<Taxa>) -> Self {
        Self::from_assignment(taxa, &vec![0; taxa.len()])
    }

    /// The partition into singletons, the bottom of the lattice.
    pub fn singletons(taxa: &Arc<Taxa>) -> Self {
        let ids: Vec<u32> = (0..taxa.len() as u32).collect();
        Self::from_assignment(taxa, &ids)
    }

    pub fn taxa(&self) -> &Arc<Taxa> {
        &self.taxa
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<TaxonId>] {
        &self.blocks
    }

    pub fn block(&self, id: BlockId) -> &[TaxonId] {
        &self.blocks[id.index()]
    }

    pub fn block_ids(&self) -> impl Iterator<Item = BlockId> {
        (0..self.blocks.len() as u32).map(BlockId)
    }

    pub fn block_of(&self, x: TaxonId) -> BlockId {
        BlockId(self.block_of[x as usize])
    }

    pub fn format_block(&self, id: BlockId) -> String {
        self.taxa.format_set(self.block(id))
    }

    fn check_same(&self, other: &Partition) -> Result<()> {
        if same_taxa(&self.taxa, &other.taxa) {
            Ok(())
        } else {
            Err(Error::GroundSetMismatch)
        }
    }

    /// Common refinement `P1 ∧ P2`: all non-empty pairwise block intersections.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.check_same(other)?;
        let n = self.blocks.len() as u64;
        let keys: Vec<u64> = self
            .block_of
            .iter()
            .zip(&other.block_of)
            .map(|(&a, &b)| b as u64 * n + a as u64)
            .collect();
        let mut rename: HashMap<u64, u32> = HashMap::new();
        let assignment: Vec<u32> = keys
            .iter()
            .map(|k| {
                let next = rename.len() as u32;
                *rename.entry(*k).or_insert(next)
            })
            .collect();
        Ok(Partition::from_assignment(&self.taxa, &assignment))
    }

    /// Refinement supremum `P1 ∨ P2`: blocks linked through a common
    /// intersection are merged until nothing changes.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.check_same(other)?;
        let mut uf = UnionFind::new(self.taxa.len());
        for block in self.blocks.iter().chain(&other.blocks) {
            for w in block.windows(2) {
                uf.union(w[0] as usize, w[1] as usize);
            }
        }
        let assignment: Vec<u32> = (0..self.taxa.len()).map(|x| uf.find(x) as u32).collect();
        Ok(Partition::from_assignment(&self.taxa, &assignment))
    }

    /// Every pair of blocks is nested or disjoint.
    pub fn locally_comparable(&self, other: &Partition) -> Result<bool> {
        self.check_same(other)?;
        let mut common: HashMap<(u32, u32), usize> = HashMap::new();
        for (&a, &b) in self.block_of.iter().zip(&other.block_of) {
            *common.entry((a, b)).or_default() += 1;
        }
        Ok(common.iter().all(|(&(a, b), &k)| {
            k == self.blocks[a as usize].len() || k == other.blocks[b as usize].len()
        }))
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.blocks.iter().all(|block| {
            let b = other.block_of[block[0] as usize];
            block.iter().all(|&x| other.block_of[x as usize] == b)
        }))
    }
}

/// n-ary common refinement.
pub fn meet_all<'a, I>(partitions: I) -> Result<Partition>
where
    I: IntoIterator<Item = &'a Partition>,
{
    let mut iter = partitions.into_iter();
    let first = iter.next().ok_or(Error::EmptySystem)?.clone();
    iter.try_fold(first, |acc, p| acc.meet(p))
}

impl fmt::Display for Partition {
    /// Partition-file syntax: `a|b,c|d,e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            f.write_str(&self.taxa.format_set(block))?;
        }
        Ok(())
    }
}
