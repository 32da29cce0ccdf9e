#![allow(dead_code)]

use std::sync::Arc;

use phylopart::tree::NONE;
use phylopart::{Partition, RootedTree, Taxa, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `a, b, c, ...` for small sets, `x0, x1, ...` otherwise.
pub fn taxa(n: usize) -> Arc<Taxa> {
    if n <= 26 {
        Taxa::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
    } else {
        Taxa::new((0..n).map(|i| format!("x{i}"))).unwrap()
    }
}

/// Random tree by merging `2..=max_arity` random subtrees until one is left.
pub fn random_tree(rng: &mut impl Rng, taxa: &Arc<Taxa>, max_arity: usize) -> RootedTree {
    let n = taxa.len();
    let mut parent = vec![NONE; n];
    let mut taxon: Vec<u32> = (0..n as u32).collect();
    let mut roots: Vec<u32> = (0..n as u32).collect();
    while roots.len() > 1 {
        let k = rng.gen_range(2..=max_arity.max(2).min(roots.len()));
        let v = parent.len() as u32;
        parent.push(NONE);
        taxon.push(NONE);
        for _ in 0..k {
            let i = rng.gen_range(0..roots.len());
            parent[roots.swap_remove(i) as usize] = v;
        }
        roots.push(v);
    }
    RootedTree::from_parents(taxa, &parent, &taxon).unwrap()
}

pub fn random_partition(rng: &mut impl Rng, taxa: &Arc<Taxa>, max_blocks: u32) -> Partition {
    let k = rng.gen_range(1..=max_blocks);
    let assignment: Vec<u32> = (0..taxa.len()).map(|_| rng.gen_range(0..k)).collect();
    Partition::from_assignment(taxa, &assignment)
}

/// Each edge independently with probability `p`.
pub fn random_cut(rng: &mut impl Rng, t: &RootedTree, p: f64) -> Vec<VertexId> {
    t.edges().filter(|_| rng.gen_bool(p)).collect()
}

pub fn shuffled<T: Clone>(rng: &mut impl Rng, items: &[T]) -> Vec<T> {
    let mut v = items.to_vec();
    v.shuffle(rng);
    v
}
