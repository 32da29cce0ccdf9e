//! Exact search over the binary refinements of a tree.
//!
//! A binary tree on the `d` children of a vertex is encoded by inserting child
//! `k` (for `k = 2..d`) above one of the `2k - 1` nodes already placed, giving
//! `(2d - 3)!!` codes. Codes of all non-binary vertices form one mixed-radix
//! index, so the search space is the integer range `0..Π (2h_v + 1)!!`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::{check_tree, PartitionSystem};
use crate::compat::is_compatible;
use crate::coloring::color_edges_with;
use crate::error::{Error, Result};
use crate::par::{find_first, Exec};
use crate::refine::build_refinement;
use crate::tree::{RootedTree, VertexId, NONE};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest number of candidate trees the search may visit.
    pub budget: u64,
    /// Reject early when a member is not r-compatible with the tree.
    pub prune: bool,
    pub exec: Exec,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            prune: true,
            exec: Exec::default(),
        }
    }
}

/// All binary refinements of a tree, addressable by index.
#[derive(Debug, Clone)]
pub struct BinaryRefinements {
    tree: RootedTree,
    /// Non-binary vertices with their children.
    slots: Vec<(VertexId, Vec<VertexId>)>,
    count: BigUint,
    next: u64,
}

fn double_factorial_odd(d: usize) -> BigUint {
    // (2d - 3)!! for d >= 2
    (1..d).fold(BigUint::one(), |acc, k| acc * BigUint::from(2 * k as u64 - 1))
}

impl BinaryRefinements {
    pub fn new(t: &RootedTree) -> Self {
        let slots: Vec<(VertexId, Vec<VertexId>)> = (0..t.len() as VertexId)
            .filter(|&v| t.children(v).len() > 2)
            .map(|v| (v, t.children(v).to_vec()))
            .collect();
        let count = slots
            .iter()
            .map(|(_, kids)| double_factorial_odd(kids.len()))
            .product();
        BinaryRefinements {
            tree: t.clone(),
            slots,
            count,
            next: 0,
        }
    }

    /// `Π (2h_v + 1)!!` over non-binary vertices.
    pub fn total(&self) -> &BigUint {
        &self.count
    }

    /// The refinement with index `i < count`.
    pub fn get(&self, mut i: u64) -> RootedTree {
        let t = &self.tree;
        let mut parent = t.parent_array().to_vec();
        let mut taxon = t.taxon_array().to_vec();
        let mut names = t.names().to_vec();
        let mut local_parent: Vec<u32> = Vec::new();
        let mut nodes: Vec<u32> = Vec::new();
        for (v, kids) in &self.slots {
            let d = kids.len();
            // Local ids: children 0..d, inner nodes d..2d-1 (d is the local root).
            local_parent.clear();
            local_parent.resize(2 * d - 1, NONE);
            local_parent[0] = d as u32;
            local_parent[1] = d as u32;
            let mut root = d as u32;
            nodes.clear();
            nodes.extend([0, 1, d as u32]);
            for k in 2..d {
                let radix = (2 * k - 1) as u64;
                let u = nodes[(i % radix) as usize];
                i /= radix;
                let w = (d + k - 1) as u32;
                local_parent[w as usize] = local_parent[u as usize];
                if u == root {
                    root = w;
                }
                local_parent[u as usize] = w;
                local_parent[k] = w;
                nodes.push(k as u32);
                nodes.push(w);
            }
            // Map the local root to v and other inner nodes to new vertices.
            let mut global = vec![NONE; 2 * d - 1];
            global[..d].copy_from_slice(kids);
            for (w, slot) in global.iter_mut().enumerate().skip(d) {
                *slot = if w as u32 == root {
                    *v
                } else {
                    parent.push(NONE);
                    taxon.push(NONE);
                    if !names.is_empty() {
                        names.push(None);
                    }
                    parent.len() as u32 - 1
                };
            }
            for w in 0..2 * d - 1 {
                if w as u32 != root {
                    parent[global[w] as usize] = global[local_parent[w] as usize];
                }
            }
        }
        RootedTree::build(t.taxa(), &parent, &taxon, names)
            .expect("binary refinement of a phylogenetic tree")
            .0
    }
}

impl Iterator for BinaryRefinements {
    type Item = RootedTree;

    fn next(&mut self) -> Option<RootedTree> {
        if BigUint::from(self.next) >= self.count {
            return None;
        }
        let t = self.get(self.next);
        self.next += 1;
        Some(t)
    }
}

/// All binary refinements of `t` in a fixed order.
pub fn enumerate_binary_refinements(t: &RootedTree) -> BinaryRefinements {
    BinaryRefinements::new(t)
}

pub fn binary_refinement_count(t: &RootedTree) -> BigUint {
    BinaryRefinements::new(t).count
}

/// A refinement of `t` compatible with every member of `ps`, or `None` if
/// none exists. Returns `t` itself when it already qualifies; otherwise a
/// binary refinement (or, for a single member, the canonical refinement).
pub fn compat_tp(t: &RootedTree, ps: &PartitionSystem, opts: &SearchOptions) -> Result<Option<RootedTree>> {
    check_tree(t, ps)?;
    let members = ps.members();
    let mut all = true;
    for p in members {
        all &= is_compatible(t, p)?;
    }
    if all {
        return Ok(Some(t.clone()));
    }
    if opts.prune {
        let idx = t.lca_index();
        if members.iter().any(|p| color_edges_with(t, &idx, p).is_err()) {
            return Ok(None);
        }
        if let [p] = members {
            return build_refinement(t, p).map(Some);
        }
    }
    let space = BinaryRefinements::new(t);
    let count = match space.total().to_u64() {
        Some(c) if c <= opts.budget => c,
        _ => {
            return Err(Error::BudgetExceeded {
                count: space.total().clone(),
                budget: opts.budget,
            })
        }
    };
    let hit = find_first(opts.exec, count, |i| {
        let candidate = space.get(i);
        members
            .iter()
            .all(|p| is_compatible(&candidate, p).unwrap_or(false))
    });
    Ok(hit.map(|i| space.get(i)))
}

/// A tree on X compatible with every member, searched among refinements of the star.
pub fn exist_tp(ps: &PartitionSystem, opts: &SearchOptions) -> Result<Option<RootedTree>> {
    compat_tp(&RootedTree::star(ps.taxa()), ps, opts)
}
