use std::sync::Arc;

use super::rooted::RootedTree;
use super::{VertexId, NONE};
use crate::error::{Error, Result};
use crate::label::{Taxa, TaxonId};

/// An unrooted phylogenetic tree: leaves carry X, other vertices have degree ≥ 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnrootedTree {
    taxa: Arc<Taxa>,
    adj: Vec<Vec<VertexId>>,
    taxon: Vec<u32>,
    leaf: Vec<VertexId>,
}

impl UnrootedTree {
    /// `taxon[v]` is the leaf label id or `NONE` for inner vertices.
    pub fn from_edges(taxa: &Arc<Taxa>, taxon: Vec<u32>, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let n = taxon.len();
        if taxa.len() < 3 {
            return Err(Error::TooFewLeaves(taxa.len()));
        }
        if edges.len() + 1 != n {
            return Err(Error::InvalidTree("an unrooted tree needs |V| - 1 edges".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n || u == v {
                return Err(Error::InvalidTree(format!("bad edge {u}-{v}")));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        let mut leaf = vec![NONE; taxa.len()];
        for v in 0..n {
            match (adj[v].len(), taxon[v]) {
                (1, NONE) => return Err(Error::InvalidTree(format!("leaf vertex {v} has no label"))),
                (1, x) => {
                    let slot = leaf
                        .get_mut(x as usize)
                        .ok_or_else(|| Error::UnknownLabel(format!("#{x}")))?;
                    if *slot != NONE {
                        return Err(Error::DuplicateLeaf(taxa.label(x).to_string()));
                    }
                    *slot = v as VertexId;
                }
                (d, NONE) if d >= 3 => {}
                (0 | 2, _) => return Err(Error::UnaryInnerVertex),
                (_, x) => {
                    return Err(Error::InvalidTree(format!(
                        "inner vertex carries label `{}`",
                        taxa.label(x)
                    )))
                }
            }
        }
        if let Some(x) = leaf.iter().position(|&v| v == NONE) {
            return Err(Error::InvalidTree(format!(
                "leaf `{}` is missing",
                taxa.label(x as TaxonId)
            )));
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w as usize);
                }
            }
        }
        if count != n {
            return Err(Error::InvalidTree("graph is not connected".into()));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(UnrootedTree {
            taxa: Arc::clone(taxa),
            adj,
            taxon,
            leaf,
        })
    }

    pub fn taxa(&self) -> &Arc<Taxa> {
        &self.taxa
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v as usize]
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.taxon[v as usize] != NONE
    }

    pub fn taxon(&self, v: VertexId) -> Option<TaxonId> {
        let x = self.taxon[v as usize];
        (x != NONE).then_some(x)
    }

    pub fn leaf(&self, x: TaxonId) -> VertexId {
        self.leaf[x as usize]
    }

    /// All edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.len() - 1);
        for (u, ns) in self.adj.iter().enumerate() {
            out.extend(ns.iter().filter(|&&v| (u as u32) < v).map(|&v| (u as u32, v)));
        }
        out
    }

    /// The inner vertex adjacent to the leaf of the smallest label.
    pub fn default_root(&self) -> VertexId {
        self.adj[self.leaf[0] as usize][0]
    }

    pub fn root_at(&self, v: VertexId) -> Result<RootedTree> {
        Ok(self.root_at_mapped(v)?.0)
    }

    /// Roots at inner vertex `v`; also returns the map from these vertex ids
    /// to the rooted tree's ids.
    pub fn root_at_mapped(&self, v: VertexId) -> Result<(RootedTree, Vec<u32>)> {
        if v as usize >= self.len() || self.is_leaf(v) {
            return Err(Error::NotInnerVertex(v as usize));
        }
        let parent = self.orient(v, NONE);
        RootedTree::build(&self.taxa, &parent, &self.taxon, Vec::new())
    }

    /// Roots by subdividing edge `{u, w}` with a new root vertex.
    pub fn root_on_edge(&self, u: VertexId, w: VertexId) -> Result<RootedTree> {
        if !self.adj.get(u as usize).is_some_and(|ns| ns.contains(&w)) {
            return Err(Error::ForeignEdge(format!("{u}-{w}")));
        }
        let mut parent = self.orient(u, w);
        let wside = self.orient(w, u);
        let root = self.len() as u32;
        for (i, p) in wside.into_iter().enumerate() {
            if p != NONE {
                parent[i] = p;
            }
        }
        parent[u as usize] = root;
        parent[w as usize] = root;
        parent.push(NONE);
        let mut taxon = self.taxon.clone();
        taxon.push(NONE);
        Ok(RootedTree::build(&self.taxa, &parent, &taxon, Vec::new())?.0)
    }

    /// Parent pointers oriented away from `from`, not crossing into `block`.
    fn orient(&self, from: VertexId, block: VertexId) -> Vec<u32> {
        let mut parent = vec![NONE; self.len()];
        let mut stack = vec![from];
        let mut seen = vec![false; self.len()];
        seen[from as usize] = true;
        if block != NONE {
            seen[block as usize] = true;
        }
        while let Some(a) = stack.pop() {
            for &b in &self.adj[a as usize] {
                if !seen[b as usize] {
                    seen[b as usize] = true;
                    parent[b as usize] = a;
                    stack.push(b);
                }
            }
        }
        parent
    }
}

impl RootedTree {
    /// Forgets the root, suppressing it when it has exactly two children.
    pub fn unroot(&self) -> Result<UnrootedTree> {
        Ok(self.unroot_mapped()?.0)
    }

    /// Also returns, per rooted vertex, its unrooted id (`NONE` for a
    /// suppressed root).
    pub fn unroot_mapped(&self) -> Result<(UnrootedTree, Vec<u32>)> {
        if self.taxa().len() < 3 {
            return Err(Error::TooFewLeaves(self.taxa().len()));
        }
        let kids = self.children(self.root());
        let suppress = kids.len() == 2;
        let map: Vec<u32> = (0..self.len() as u32)
            .map(|v| if suppress { v.wrapping_sub(1) } else { v })
            .collect();
        let mut edges = Vec::with_capacity(self.len());
        for v in self.edges() {
            let p = self.parent(v).unwrap();
            if !(suppress && p == self.root()) {
                edges.push((map[p as usize], map[v as usize]));
            }
        }
        if suppress {
            edges.push((map[kids[0] as usize], map[kids[1] as usize]));
        }
        let taxon: Vec<u32> = self.taxon_array()[usize::from(suppress)..].to_vec();
        let tree = UnrootedTree::from_edges(self.taxa(), taxon, &edges)?;
        Ok((tree, map))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::newick::{parse_newick, serialize_newick};

    #[test]
    fn unroot_suppresses_degree_two_root() {
        let t = parse_newick("((a,b),(c,d));").unwrap();
        let u = t.unroot().unwrap();
        assert_eq!(u.len(), 6);
        assert_eq!(u.edges().len(), 5);
        let star = parse_newick("(a,b,c);").unwrap().unroot().unwrap();
        assert_eq!(star.len(), 4);
        let small = parse_newick("(a,b);").unwrap();
        assert_eq!(small.unroot().unwrap_err(), Error::TooFewLeaves(2));
    }

    #[test]
    fn rooting_at_inner_vertices() {
        let u = parse_newick("((a,b),(c,d));").unwrap().unroot().unwrap();
        let inner: Vec<u32> = (0..u.len() as u32).filter(|&v| !u.is_leaf(v)).collect();
        assert_eq!(inner.len(), 2);
        let mut found = Vec::new();
        for &v in &inner {
            let r = u.root_at(v).unwrap();
            assert_eq!(r.num_edges(), u.edges().len());
            found.push(serialize_newick(&r));
        }
        found.sort();
        assert_eq!(found, vec!["((a,b),c,d);", "(a,b,(c,d));"]);
        assert_eq!(u.root_at(u.leaf(0)).unwrap_err(), Error::NotInnerVertex(u.leaf(0) as usize));
        assert_eq!(serialize_newick(&u.root_at(u.default_root()).unwrap()), "(a,b,(c,d));");
    }

    #[test]
    fn rooting_on_an_edge_inverts_unrooting() {
        let t = parse_newick("((a,b),(c,d));").unwrap();
        let u = t.unroot().unwrap();
        let mut hit = false;
        for (a, b) in u.edges() {
            let r = u.root_on_edge(a, b).unwrap();
            assert_eq!(r.num_edges(), u.edges().len() + 1);
            hit |= r == t;
        }
        assert!(hit);
        assert!(u.root_on_edge(u.leaf(0), u.leaf(1)).is_err());
    }
}
