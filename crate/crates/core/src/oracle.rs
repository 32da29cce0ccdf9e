//! Brute-force reference implementations. Slow on purpose; every routine has a
//! hard size guard and fails with [`Error::TooLarge`] beyond it.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hierarchy::Hierarchy;
use crate::label::{same_taxa, Taxa, TaxonId};
use crate::partition::Partition;
use crate::systems::PartitionSystem;
use crate::tree::{RootedTree, VertexId};

/// Largest edge count [`brute_compatible`] will exhaust.
pub const MAX_EDGES: usize = 20;
/// Largest leaf set for tree enumeration and [`brute_r_compatible`].
pub const MAX_TREE_TAXA: usize = 6;
/// Largest leaf set for [`brute_exist_tp`].
pub const MAX_EXIST_TAXA: usize = 5;
/// Largest leaf set for [`enumerate_partitions`].
pub const MAX_PARTITION_TAXA: usize = 10;

fn guard(what: &str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::TooLarge(format!("{what} {size} (limit {limit})")))
    } else {
        Ok(())
    }
}

/// Leaf-set bitmask below every vertex.
fn cluster_masks(t: &RootedTree) -> Vec<u64> {
    let mut mask = vec![0u64; t.len()];
    for v in (0..t.len() as VertexId).rev() {
        if let Some(x) = t.taxon(v) {
            mask[v as usize] = 1 << x;
        }
        if let Some(p) = t.parent(v) {
            mask[p as usize] |= mask[v as usize];
        }
    }
    mask
}

fn block_masks(p: &Partition) -> Vec<u64> {
    p.blocks()
        .iter()
        .map(|b| b.iter().fold(0u64, |m, &x| m | 1 << x))
        .collect()
}

fn check_taxa(t: &RootedTree, p: &Partition) -> Result<()> {
    if same_taxa(t.taxa(), p.taxa()) {
        Ok(())
    } else {
        Err(Error::LeafSetMismatch)
    }
}

/// Every `H ⊆ E(t)` with `F(t, H) = p`, each as sorted child vertices.
pub fn brute_separating_sets(t: &RootedTree, p: &Partition) -> Result<Vec<Vec<VertexId>>> {
    check_taxa(t, p)?;
    guard("edge count", t.num_edges(), MAX_EDGES)?;
    let clusters = cluster_masks(t);
    let n = t.taxa().len() as TaxonId;
    // Edge i is the edge above vertex i + 1.
    let path = |x: TaxonId, y: TaxonId| -> u32 {
        let pair = (1u64 << x) | (1u64 << y);
        (1..t.len())
            .filter(|&v| (clusters[v] & pair).count_ones() == 1)
            .fold(0u32, |m, v| m | 1 << (v - 1))
    };
    let all: u32 = if t.num_edges() == 32 { u32::MAX } else { (1u32 << t.num_edges()) - 1 };
    let mut forbidden = 0u32;
    let mut must_cut: Vec<u32> = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if p.block_of(x) == p.block_of(y) {
                forbidden |= path(x, y);
            } else {
                must_cut.push(path(x, y));
            }
        }
    }
    let free = all & !forbidden;
    let mut found = Vec::new();
    let mut h = free;
    loop {
        if must_cut.iter().all(|&m| m & h != 0) {
            found.push((0..t.num_edges() as u32).filter(|i| h >> i & 1 == 1).map(|i| i + 1).collect());
        }
        if h == 0 {
            break;
        }
        h = (h - 1) & free;
    }
    found.reverse();
    Ok(found)
}

/// True iff some edge subset of `t` cuts it into the blocks of `p`.
pub fn brute_compatible(t: &RootedTree, p: &Partition) -> Result<bool> {
    Ok(!brute_separating_sets(t, p)?.is_empty())
}

/// All rooted phylogenetic trees on `taxa`, the star first.
pub fn enumerate_rooted_trees(taxa: &Arc<Taxa>) -> Result<Vec<RootedTree>> {
    let n = taxa.len();
    guard("leaf count", n, MAX_TREE_TAXA)?;
    Ok(enumerate_cluster_sets(n)
        .into_iter()
        .map(|clusters| tree_of_masks(taxa, &clusters))
        .collect())
}

/// Cluster sets (root first, by decreasing size) of all trees on `n` leaves,
/// grown by inserting one leaf at a time.
fn enumerate_cluster_sets(n: usize) -> Vec<Vec<u64>> {
    let mut trees: Vec<Vec<u64>> = vec![vec![0b11, 0b01, 0b10]];
    for k in 2..n {
        let bit = 1u64 << k;
        let mut next = Vec::new();
        for tree in &trees {
            // Attach the new leaf below an inner vertex.
            for &c in tree.iter().filter(|c| c.count_ones() > 1) {
                let mut grown: Vec<u64> = tree.iter().map(|&d| if d & c == c { d | bit } else { d }).collect();
                grown.push(bit);
                next.push(normalize(grown));
            }
            // Or subdivide the edge above any vertex (a new root for the root).
            for &c in tree {
                let mut grown: Vec<u64> = tree.iter().map(|&d| if d & c == c && d != c { d | bit } else { d }).collect();
                grown.push(c | bit);
                grown.push(bit);
                next.push(normalize(grown));
            }
        }
        trees = next;
    }
    trees
}

fn normalize(mut clusters: Vec<u64>) -> Vec<u64> {
    clusters.sort_unstable_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
    clusters
}

fn tree_of_masks(taxa: &Arc<Taxa>, clusters: &[u64]) -> RootedTree {
    let sets = clusters
        .iter()
        .map(|&c| (0..taxa.len() as TaxonId).filter(|x| c >> x & 1 == 1).collect())
        .collect();
    RootedTree::from_hierarchy(&Hierarchy::from_sorted_unchecked(taxa, sets))
}

/// True iff every cluster of `coarse` is a cluster of `fine`.
pub fn brute_is_refinement(fine: &RootedTree, coarse: &RootedTree) -> bool {
    let mut have = cluster_masks(fine);
    have.sort_unstable();
    cluster_masks(coarse).iter().all(|c| have.binary_search(c).is_ok())
}

/// True iff some refinement of `t` is compatible with `p`.
pub fn brute_r_compatible(t: &RootedTree, p: &Partition) -> Result<bool> {
    check_taxa(t, p)?;
    guard("leaf count", t.taxa().len(), MAX_TREE_TAXA)?;
    for candidate in enumerate_rooted_trees(t.taxa())? {
        if brute_is_refinement(&candidate, t) && brute_compatible(&candidate, p)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A vertex whose cluster overlaps two distinct blocks of `p`, if any.
pub fn cluster_overlapping_two_blocks(t: &RootedTree, p: &Partition) -> Result<Option<VertexId>> {
    check_taxa(t, p)?;
    guard("leaf count", t.taxa().len(), 64)?;
    let blocks = block_masks(p);
    let overlap = |c: u64, b: u64| c & b != 0 && c & b != c && c & b != b;
    Ok(cluster_masks(t)
        .iter()
        .position(|&c| blocks.iter().filter(|&&b| overlap(c, b)).count() >= 2)
        .map(|v| v as VertexId))
}

/// All partitions of `taxa`, via restricted growth strings.
pub fn enumerate_partitions(taxa: &Arc<Taxa>) -> Result<Vec<Partition>> {
    let n = taxa.len();
    guard("leaf count", n, MAX_PARTITION_TAXA)?;
    let mut out = Vec::new();
    let mut rgs = vec![0u32; n];
    loop {
        out.push(Partition::from_assignment(taxa, &rgs));
        // Next string: bump the last position that may grow, reset the tail.
        let mut i = n - 1;
        loop {
            if i == 0 {
                return Ok(out);
            }
            let max_prefix = *rgs[..i].iter().max().unwrap();
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                rgs[i + 1..].iter_mut().for_each(|r| *r = 0);
                break;
            }
            i -= 1;
        }
    }
}

/// The first enumerated tree compatible with every member of `ps`.
pub fn brute_exist_tp(ps: &PartitionSystem) -> Result<Option<RootedTree>> {
    guard("leaf count", ps.taxa().len(), MAX_EXIST_TAXA)?;
    for t in enumerate_rooted_trees(ps.taxa())? {
        let mut ok = true;
        for p in ps.members() {
            if !brute_compatible(&t, p)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::newick::{parse_newick, serialize_newick};
    use std::collections::HashSet;

    fn taxa(n: usize) -> Arc<Taxa> {
        Taxa::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
    }

    #[test]
    fn tree_counts() {
        for (n, expected, binary) in [(2, 1, 1), (3, 4, 3), (4, 26, 15), (5, 236, 105), (6, 2752, 945)] {
            let all = enumerate_rooted_trees(&taxa(n)).unwrap();
            assert_eq!(all.len(), expected);
            let distinct: HashSet<String> = all.iter().map(serialize_newick).collect();
            assert_eq!(distinct.len(), expected);
            assert_eq!(all.iter().filter(|t| t.len() == 2 * n - 1).count(), binary);
            assert_eq!(all[0], RootedTree::star(&taxa(n)));
        }
        assert!(matches!(enumerate_rooted_trees(&taxa(7)), Err(Error::TooLarge(_))));
    }

    #[test]
    fn bell_numbers() {
        for (n, bell) in [(2, 2), (3, 5), (4, 15), (5, 52), (6, 203)] {
            let all = enumerate_partitions(&taxa(n)).unwrap();
            assert_eq!(all.len(), bell);
            assert_eq!(all.iter().collect::<HashSet<_>>().len(), bell);
        }
    }

    #[test]
    fn reference_examples() {
        let t1 = parse_newick("((b,c),(d,e),a);").unwrap();
        let p = Partition::new(t1.taxa(), &[vec!["a"], vec!["b", "c"], vec!["d", "e"]]).unwrap();
        assert!(brute_compatible(&t1, &p).unwrap());
        let star = parse_newick("(a,b,c,d);").unwrap();
        let q = Partition::new(star.taxa(), &[vec!["a", "b"], vec!["c", "d"]]).unwrap();
        assert!(!brute_compatible(&star, &q).unwrap());
        assert!(brute_compatible(&star, &Partition::whole(star.taxa())).unwrap());
        assert!(brute_r_compatible(&star, &q).unwrap());
        let crossed = parse_newick("((a,c),(b,d));").unwrap();
        assert!(!brute_r_compatible(&crossed, &q).unwrap());
        assert!(cluster_overlapping_two_blocks(&crossed, &q).unwrap().is_some());
        assert_eq!(cluster_overlapping_two_blocks(&star, &q).unwrap(), None);
    }

    #[test]
    fn exist_examples() {
        let x = taxa(4);
        let q1 = Partition::new(&x, &[vec!["a", "b"], vec!["c", "d"]]).unwrap();
        let q2 = Partition::new(&x, &[vec!["a", "c"], vec!["b", "d"]]).unwrap();
        let both = PartitionSystem::new(&x, vec![q1.clone(), q2]).unwrap();
        assert_eq!(brute_exist_tp(&both).unwrap(), None);
        let one = PartitionSystem::new(&x, vec![q1]).unwrap();
        assert!(brute_exist_tp(&one).unwrap().is_some());
        let none = PartitionSystem::new(&x, vec![]).unwrap();
        assert_eq!(brute_exist_tp(&none).unwrap(), Some(RootedTree::star(&x)));
    }
}
