//! Constant-time lowest common ancestors.
//!
//! Vertices carry preorder ids, so for `u < v` the lca is the smallest parent id
//! among the vertices `u+1..=v`. Range minima are answered by a sparse table
//! over blocks of 64 positions plus a per-position monotone-stack bitmask for
//! queries inside a block, giving O(n) memory and O(1) queries.

use super::{RootedTree, VertexId};
use crate::error::{Error, Result};
use crate::label::TaxonId;

const BLOCK: usize = 64;

#[derive(Debug, Clone)]
pub struct LcaIndex {
    /// `value[i]` = parent of vertex `i`; `value[0]` is unused.
    value: Vec<u32>,
    /// Bit `j` of `mask[i]` is set iff position `block_start + j` is on the
    /// monotone stack of prefix `block_start..=i`.
    mask: Vec<u64>,
    /// `table[k][b]` = min over blocks `b..b + 2^k`.
    table: Vec<Vec<u32>>,
    leaf: Vec<VertexId>,
}

impl LcaIndex {
    pub fn new(t: &RootedTree) -> Self {
        let n = t.len();
        let mut value = Vec::with_capacity(n);
        value.push(u32::MAX);
        value.extend((1..n as u32).map(|v| t.parent(v).expect("non-root vertex")));

        let mut mask = vec![0u64; n];
        let mut stack: Vec<usize> = Vec::with_capacity(BLOCK);
        for start in (0..n).step_by(BLOCK) {
            stack.clear();
            let mut bits = 0u64;
            for i in start..(start + BLOCK).min(n) {
                while let Some(&top) = stack.last() {
                    if value[top] < value[i] {
                        break;
                    }
                    bits &= !(1u64 << (top - start));
                    stack.pop();
                }
                stack.push(i);
                bits |= 1u64 << (i - start);
                mask[i] = bits;
            }
        }

        let blocks = n.div_ceil(BLOCK);
        let mut table = vec![(0..blocks)
            .map(|b| {
                value[b * BLOCK..((b + 1) * BLOCK).min(n)]
                    .iter()
                    .copied()
                    .min()
                    .unwrap_or(u32::MAX)
            })
            .collect::<Vec<_>>()];
        let mut width = 1;
        while 2 * width <= blocks {
            let prev = table.last().unwrap();
            let next = (0..=blocks - 2 * width)
                .map(|b| prev[b].min(prev[b + width]))
                .collect();
            table.push(next);
            width *= 2;
        }

        let leaf = t.taxa().ids().map(|x| t.leaf(x)).collect();
        LcaIndex {
            value,
            mask,
            table,
            leaf,
        }
    }

    fn in_block(&self, l: usize, r: usize) -> u32 {
        let start = r - r % BLOCK;
        let bits = self.mask[r] & (!0u64 << (l - start));
        self.value[start + bits.trailing_zeros() as usize]
    }

    fn range_min(&self, l: usize, r: usize) -> u32 {
        let (bl, br) = (l / BLOCK, r / BLOCK);
        if bl == br {
            return self.in_block(l, r);
        }
        let mut best = self
            .in_block(l, bl * BLOCK + BLOCK - 1)
            .min(self.in_block(br * BLOCK, r));
        if bl + 1 < br {
            let (lo, hi) = (bl + 1, br - 1);
            let k = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
            best = best
                .min(self.table[k][lo])
                .min(self.table[k][hi + 1 - (1 << k)]);
        }
        best
    }

    pub fn lca(&self, u: VertexId, v: VertexId) -> VertexId {
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        if u == v {
            return u;
        }
        self.range_min(u as usize + 1, v as usize)
    }

    /// lca of a non-empty taxon set.
    pub fn lca_of_taxa(&self, set: &[TaxonId]) -> Result<VertexId> {
        let (&first, rest) = set.split_first().ok_or(Error::EmptyArgument)?;
        Ok(self.lca_of_taxa_nonempty(first, rest))
    }

    pub(crate) fn lca_of_taxa_nonempty(&self, first: TaxonId, rest: &[TaxonId]) -> VertexId {
        let mut lo = self.leaf[first as usize];
        let mut hi = lo;
        for &x in rest {
            let v = self.leaf[x as usize];
            lo = lo.min(v);
            hi = hi.max(v);
        }
        // The lca of a set is the lca of its preorder-extreme members.
        self.lca(lo, hi)
    }
}
